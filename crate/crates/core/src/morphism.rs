//! Morphisms of oriented graded posets and isomorphism search.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ogposet::{ClosedSubset, ElemRef, OgPoset, Sign};

/// A map of elements, stored as the image of each source element in flat order.
///
/// The source and target posets are supplied to each operation rather than stored,
/// so that many maps into one ambient poset stay cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OgMap {
    assignment: Vec<ElemRef>,
}

/// First failure found while checking a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, found: usize },
    InvalidTarget { x: ElemRef, image: ElemRef },
    Dimension { x: ElemRef, image: ElemRef },
    FaceBijection { x: ElemRef, sign: Sign },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, found } => {
                write!(f, "map has {found} entries, source has {expected} elements")
            }
            Violation::InvalidTarget { x, image } => write!(f, "{x} maps to {image}, which is not in the target"),
            Violation::Dimension { x, image } => write!(f, "{x} maps to {image} of a different dimension"),
            Violation::FaceBijection { x, sign } => write!(f, "faces of sign {sign} of {x} are not mapped bijectively"),
        }
    }
}

impl OgMap {
    /// From the images of the source elements in flat order.
    pub fn new(assignment: Vec<ElemRef>) -> Self {
        Self { assignment }
    }

    pub fn identity(p: &OgPoset) -> Self {
        Self::new(p.elements().collect())
    }

    pub fn from_fn(source: &OgPoset, f: impl Fn(ElemRef) -> ElemRef) -> Self {
        Self::new(source.elements().map(f).collect())
    }

    pub fn apply(&self, source: &OgPoset, x: ElemRef) -> ElemRef {
        self.assignment[source.id(x)]
    }

    /// Images in flat source order.
    pub fn assignment(&self) -> &[ElemRef] {
        &self.assignment
    }

    /// `g ∘ self`.
    pub fn then(&self, middle: &OgPoset, g: &OgMap) -> OgMap {
        Self::new(self.assignment.iter().map(|&y| g.apply(middle, y)).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.assignment.len());
        self.assignment.iter().all(|y| seen.insert(*y))
    }
}

/// Checks dimension preservation and the face bijection condition everywhere.
pub fn validate_morphism(source: &OgPoset, target: &OgPoset, f: &OgMap) -> std::result::Result<(), Violation> {
    if f.assignment.len() != source.len() {
        return Err(Violation::Length {
            expected: source.len(),
            found: f.assignment.len(),
        });
    }
    for x in source.elements() {
        let image = f.apply(source, x);
        if !target.contains(image) {
            return Err(Violation::InvalidTarget { x, image });
        }
        if image.dim != x.dim {
            return Err(Violation::Dimension { x, image });
        }
    }
    for x in source.elements() {
        let image = f.apply(source, x);
        for sign in Sign::BOTH {
            let mut mapped: Vec<ElemRef> = source.faces(x, sign).map(|z| f.apply(source, z)).collect();
            mapped.sort();
            let expected: Vec<ElemRef> = target.faces(image, sign).collect();
            if mapped != expected {
                return Err(Violation::FaceBijection { x, sign });
            }
        }
    }
    Ok(())
}

pub fn is_morphism(source: &OgPoset, target: &OgPoset, f: &OgMap) -> bool {
    validate_morphism(source, target, f).is_ok()
}

pub fn is_inclusion(source: &OgPoset, target: &OgPoset, f: &OgMap) -> bool {
    is_morphism(source, target, f) && f.is_injective()
}

/// f(U). Closed whenever `f` is a morphism.
pub fn image(source: &OgPoset, target: &OgPoset, f: &OgMap, u: &ClosedSubset) -> Result<ClosedSubset> {
    target
        .closed_subset(u.iter(source).map(|x| f.apply(source, x)))
        .ok_or_else(|| Error::Precondition("image is not closed; the map is not a morphism".into()))
}

/// Whether `f` restricts to an inclusion on every cl{x}.
pub fn is_local_embedding(source: &OgPoset, target: &OgPoset, f: &OgMap) -> bool {
    is_morphism(source, target, f)
        && source.elements().all(|x| {
            let cl = source.closure_of(x);
            let mut seen = std::collections::HashSet::new();
            let injective = cl.iter(source).all(|z| seen.insert(f.apply(source, z)));
            injective
        })
}

/// Backtracking search for isomorphisms `u -> v`.
pub struct IsoSearch<'a> {
    u: &'a OgPoset,
    v: &'a OgPoset,
    seed: Option<(ElemRef, ElemRef)>,
    allowed: Option<&'a dyn Fn(ElemRef, ElemRef) -> bool>,
}

type Signature = (usize, usize, usize, usize, usize);

fn signature(p: &OgPoset, x: ElemRef) -> Signature {
    (
        x.dim,
        p.faces(x, Sign::Minus).count(),
        p.faces(x, Sign::Plus).count(),
        p.cofaces(x, Sign::Minus).count(),
        p.cofaces(x, Sign::Plus).count(),
    )
}

impl<'a> IsoSearch<'a> {
    pub fn new(u: &'a OgPoset, v: &'a OgPoset) -> Self {
        Self {
            u,
            v,
            seed: None,
            allowed: None,
        }
    }

    /// Forces `x ↦ y`.
    pub fn seed(mut self, x: ElemRef, y: ElemRef) -> Self {
        self.seed = Some((x, y));
        self
    }

    /// Restricts which pairs may be matched.
    pub fn allowed(mut self, allowed: &'a dyn Fn(ElemRef, ElemRef) -> bool) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn first(&self) -> Option<OgMap> {
        let mut found = None;
        self.run(&mut |m| {
            found = Some(m);
            false
        });
        found
    }

    /// Number of isomorphisms, stopping once `limit` is reached.
    pub fn count(&self, limit: usize) -> usize {
        let mut n = 0;
        self.run(&mut |_| {
            n += 1;
            n < limit
        });
        n
    }

    fn run(&self, report: &mut dyn FnMut(OgMap) -> bool) {
        let (u, v) = (self.u, self.v);
        if u.dim() != v.dim() || (0..u.grades().len()).any(|d| u.grade_len(d) != v.grade_len(d)) {
            return;
        }
        if u.is_empty() {
            report(OgMap::new(Vec::new()));
            return;
        }
        let mut u_sigs: Vec<Signature> = u.elements().map(|x| signature(u, x)).collect();
        let mut v_sigs: Vec<Signature> = v.elements().map(|x| signature(v, x)).collect();
        let (u_sig, v_sig) = (u_sigs.clone(), v_sigs.clone());
        u_sigs.sort_unstable();
        v_sigs.sort_unstable();
        if u_sigs != v_sigs {
            return;
        }

        // visiting order: BFS over the Hasse diagram, each element with the
        // position of an earlier neighbour (its anchor) when there is one
        let full = u.full_subset();
        let mut order: Vec<ElemRef> = Vec::with_capacity(u.len());
        let mut placed = FixedBitSet::with_capacity(u.len());
        let starts = self.seed.map(|(x, _)| x).into_iter().chain(u.elements());
        for s in starts {
            if placed.contains(u.id(s)) {
                continue;
            }
            for x in u.hasse_bfs(s, &full) {
                placed.insert(u.id(x));
                order.push(x);
            }
        }
        let mut position = vec![0; u.len()];
        for (i, &x) in order.iter().enumerate() {
            position[u.id(x)] = i;
        }

        let mut state = Search {
            u,
            v,
            u_sig,
            v_sig,
            order,
            position,
            image: vec![None; u.len()],
            used: FixedBitSet::with_capacity(v.len()),
            seed: self.seed,
            allowed: self.allowed,
        };
        state.extend(0, report);
    }
}

struct Search<'a> {
    u: &'a OgPoset,
    v: &'a OgPoset,
    u_sig: Vec<Signature>,
    v_sig: Vec<Signature>,
    order: Vec<ElemRef>,
    position: Vec<usize>,
    image: Vec<Option<ElemRef>>,
    used: FixedBitSet,
    seed: Option<(ElemRef, ElemRef)>,
    allowed: Option<&'a dyn Fn(ElemRef, ElemRef) -> bool>,
}

impl Search<'_> {
    fn candidates(&self, x: ElemRef) -> Vec<ElemRef> {
        if let Some((sx, sy)) = self.seed {
            if sx == x {
                return vec![sy];
            }
        }
        let (u, v) = (self.u, self.v);
        for sign in Sign::BOTH {
            if let Some(z) = u.faces(x, sign).find(|z| self.image[u.id(*z)].is_some()) {
                let w = self.image[u.id(z)].unwrap();
                return v.cofaces(w, sign).collect();
            }
            if let Some(z) = u.cofaces(x, sign).find(|z| self.image[u.id(*z)].is_some()) {
                let w = self.image[u.id(z)].unwrap();
                return v.faces(w, sign).collect();
            }
        }
        v.grade(x.dim).collect()
    }

    fn consistent(&self, x: ElemRef, y: ElemRef) -> bool {
        let (u, v) = (self.u, self.v);
        if self.used.contains(v.id(y)) || self.u_sig[u.id(x)] != self.v_sig[v.id(y)] {
            return false;
        }
        if let Some(allowed) = self.allowed {
            if !allowed(x, y) {
                return false;
            }
        }
        for sign in Sign::BOTH {
            for z in u.faces(x, sign) {
                if let Some(w) = self.image[u.id(z)] {
                    if v.face_sign(y, w) != Some(sign) {
                        return false;
                    }
                }
            }
            for z in u.cofaces(x, sign) {
                if let Some(w) = self.image[u.id(z)] {
                    if v.face_sign(w, y) != Some(sign) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self, i: usize, report: &mut dyn FnMut(OgMap) -> bool) -> bool {
        if i == self.order.len() {
            let assignment = self.u.elements().map(|x| self.image[self.u.id(x)].unwrap()).collect();
            return report(OgMap::new(assignment));
        }
        let x = self.order[i];
        debug_assert_eq!(self.position[self.u.id(x)], i);
        for y in self.candidates(x) {
            if !self.consistent(x, y) {
                continue;
            }
            self.image[self.u.id(x)] = Some(y);
            self.used.insert(self.v.id(y));
            let keep_going = self.extend(i + 1, report);
            self.used.set(self.v.id(y), false);
            self.image[self.u.id(x)] = None;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Some isomorphism `u -> v`, if any.
pub fn find_isomorphism(u: &OgPoset, v: &OgPoset) -> Option<OgMap> {
    IsoSearch::new(u, v).first()
}

pub fn are_isomorphic(u: &OgPoset, v: &OgPoset) -> bool {
    find_isomorphism(u, v).is_some()
}

fn molecule_seed(p: &OgPoset) -> Result<ElemRef> {
    crate::molecule::recognize(p).ok_or_else(|| Error::Precondition("input is not a molecule".into()))?;
    let src = p.boundary(&p.full_subset(), 0, Sign::Minus);
    let first = src
        .iter(p)
        .next()
        .expect("a molecule has a 0-dimensional input boundary");
    Ok(first)
}

/// The isomorphism between two molecules, if they are isomorphic.
///
/// Both inputs must be molecules. The search is seeded at the input
/// 0-boundaries, which any isomorphism must match up.
pub fn unique_molecule_iso(u: &OgPoset, v: &OgPoset) -> Result<Option<OgMap>> {
    let (a, b) = (molecule_seed(u)?, molecule_seed(v)?);
    Ok(IsoSearch::new(u, v).seed(a, b).first())
}

/// Exhaustive variant of [`unique_molecule_iso`]: counts every isomorphism, up to `limit`.
pub fn molecule_iso_count(u: &OgPoset, v: &OgPoset, limit: usize) -> Result<usize> {
    molecule_seed(u)?;
    molecule_seed(v)?;
    Ok(IsoSearch::new(u, v).count(limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_is_an_inclusion() {
        for (_, p) in catalog::all() {
            let id = OgMap::identity(&p);
            assert!(is_inclusion(&p, &p, &id));
            assert_eq!(image(&p, &p, &id, &p.full_subset()).unwrap(), p.full_subset());
        }
    }

    #[test]
    fn pinching_two_triangles_is_not_injective() {
        let u = catalog::two_triangles();
        let p = catalog::pinched_triangles();
        let q = OgMap::from_fn(&u, |x| match (x.dim, x.index) {
            (0, 3) => ElemRef::new(0, 2),
            _ => x,
        });
        assert_eq!(validate_morphism(&u, &p, &q), Ok(()));
        assert!(!is_inclusion(&u, &p, &q));
        assert!(is_local_embedding(&u, &p, &q));
    }

    #[test]
    fn collapsing_an_edge_is_rejected() {
        let a = catalog::arrow();
        let p = OgPoset::point();
        let f = OgMap::new(vec![ElemRef::new(0, 0); 3]);
        assert_eq!(
            validate_morphism(&a, &p, &f),
            Err(Violation::Dimension {
                x: ElemRef::new(1, 0),
                image: ElemRef::new(0, 0)
            })
        );
    }

    #[test]
    fn reversed_arrow_fails_the_face_condition() {
        let a = catalog::arrow();
        let f = OgMap::new(vec![ElemRef::new(0, 1), ElemRef::new(0, 0), ElemRef::new(1, 0)]);
        assert_eq!(
            validate_morphism(&a, &a, &f),
            Err(Violation::FaceBijection {
                x: ElemRef::new(1, 0),
                sign: Sign::Minus
            })
        );
    }

    #[test]
    fn molecule_isos() {
        let pt = OgPoset::point();
        assert_eq!(unique_molecule_iso(&pt, &pt).unwrap(), Some(OgMap::identity(&pt)));
        assert_eq!(unique_molecule_iso(&catalog::arrow(), &pt).unwrap(), None);
        let a = catalog::whiskered_globe();
        let b = catalog::whiskered_globe();
        assert_eq!(unique_molecule_iso(&a, &b).unwrap(), Some(OgMap::identity(&a)));
        assert_eq!(molecule_iso_count(&a, &b, 10).unwrap(), 1);
        assert!(matches!(
            unique_molecule_iso(&catalog::cospan(), &pt),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn plain_search_finds_automorphisms() {
        // the loop graph swaps its two backward arrows
        let p = catalog::loop_graph();
        assert_eq!(IsoSearch::new(&p, &p).count(10), 2);
    }
}
