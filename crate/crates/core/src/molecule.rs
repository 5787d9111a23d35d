//! Molecules: construction from the point, pasting and rewrites, and recognition.
//!
//! Recognition works on closed subsets of an ambient poset. A subset with one
//! maximal element is checked as a rewrite between its two top boundaries; a
//! subset with several is split into layers following a topological sort of
//! its maximal flow graph at the layering dimension. Results are memoized per
//! subset, so recognizing many subsets of one poset shares work.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;
use crate::morphism::{unique_molecule_iso, OgMap};
use crate::ogposet::{ClosedSubset, ElemRef, Element, OgPoset, Sign};

/// How a molecule is built from points by pasting and rewriting.
///
/// The gluing isomorphisms are not recorded: between molecules they are unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Point,
    Paste {
        left: Box<Witness>,
        right: Box<Witness>,
        k: usize,
    },
    Atom {
        input: Box<Witness>,
        output: Box<Witness>,
    },
}

impl Witness {
    pub fn dim(&self) -> usize {
        match self {
            Witness::Point => 0,
            Witness::Paste { left, right, .. } => left.dim().max(right.dim()),
            Witness::Atom { input, .. } => input.dim() + 1,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Witness::Point | Witness::Atom { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization cannot fail")
    }
}

/// A recognized decomposition of a closed subset of some ambient poset.
#[derive(Clone, Debug)]
pub struct Decomp {
    pub subset: ClosedSubset,
    pub node: Node,
}

#[derive(Clone, Debug)]
pub enum Node {
    Point,
    Paste {
        left: Arc<Decomp>,
        right: Arc<Decomp>,
        k: usize,
    },
    Atom {
        input: Arc<Decomp>,
        output: Arc<Decomp>,
    },
}

impl Decomp {
    pub fn witness(&self) -> Witness {
        match &self.node {
            Node::Point => Witness::Point,
            Node::Paste { left, right, k } => Witness::Paste {
                left: Box::new(left.witness()),
                right: Box::new(right.witness()),
                k: *k,
            },
            Node::Atom { input, output } => Witness::Atom {
                input: Box::new(input.witness()),
                output: Box::new(output.witness()),
            },
        }
    }
}

/// Memoizing molecule recognizer for closed subsets of one poset.
pub struct Recognizer<'a> {
    p: &'a OgPoset,
    memo: HashMap<ClosedSubset, Option<Arc<Decomp>>>,
}

impl<'a> Recognizer<'a> {
    pub fn new(p: &'a OgPoset) -> Self {
        Self {
            p,
            memo: HashMap::new(),
        }
    }

    pub fn poset(&self) -> &'a OgPoset {
        self.p
    }

    pub fn is_molecule(&mut self, u: &ClosedSubset) -> bool {
        self.decompose(u).is_some()
    }

    pub fn witness(&mut self, u: &ClosedSubset) -> Option<Witness> {
        self.decompose(u).map(|d| d.witness())
    }

    pub fn decompose(&mut self, u: &ClosedSubset) -> Option<Arc<Decomp>> {
        if let Some(hit) = self.memo.get(u) {
            return hit.clone();
        }
        let result = self.compute(u);
        self.memo.insert(u.clone(), result.clone());
        result
    }

    fn compute(&mut self, u: &ClosedSubset) -> Option<Arc<Decomp>> {
        let p = self.p;
        let maxes = p.maximal(u);
        match maxes.as_slice() {
            [] => None,
            [top] if top.dim == 0 => Some(Arc::new(Decomp {
                subset: u.clone(),
                node: Node::Point,
            })),
            [top] => self.compute_atom(u, top.dim),
            _ => {
                let k = layering_dim(p, u);
                if k < 0 {
                    return None;
                }
                self.compute_layered(u, k as usize)
            }
        }
    }

    fn compute_atom(&mut self, u: &ClosedSubset, n: usize) -> Option<Arc<Decomp>> {
        let p = self.p;
        let n = n as isize;
        let v = p.boundary(u, n - 1, Sign::Minus);
        let w = p.boundary(u, n - 1, Sign::Plus);
        if p.subset_dim(&v) != n - 1 || p.subset_dim(&w) != n - 1 {
            return None;
        }
        if v.intersection(&w) != p.boundary_both(&v, n - 2) {
            return None;
        }
        for s in Sign::BOTH {
            if p.boundary(&v, n - 2, s) != p.boundary(&w, n - 2, s) {
                return None;
            }
        }
        if !is_round(p, &v) || !is_round(p, &w) {
            return None;
        }
        let input = self.decompose(&v)?;
        let output = self.decompose(&w)?;
        Some(Arc::new(Decomp {
            subset: u.clone(),
            node: Node::Atom { input, output },
        }))
    }

    fn compute_layered(&mut self, u: &ClosedSubset, k: usize) -> Option<Arc<Decomp>> {
        let p = self.p;
        let graph = flow::max_flow_graph(p, u, k as isize);
        let verts: Vec<ElemRef> = graph.vertices().iter().copied().collect();
        let preds: Vec<Vec<usize>> = verts
            .iter()
            .map(|&y| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| graph.has_edge(x, y))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut search = LayerSearch {
            rec: self,
            u,
            k,
            verts: &verts,
            preds: &preds,
            failed: HashSet::new(),
        };
        let start = p.boundary(u, k as isize, Sign::Minus);
        search.run(FixedBitSet::with_capacity(verts.len()), start, None)
    }
}

struct LayerSearch<'r, 'a> {
    rec: &'r mut Recognizer<'a>,
    u: &'r ClosedSubset,
    k: usize,
    verts: &'r [ElemRef],
    preds: &'r [Vec<usize>],
    failed: HashSet<FixedBitSet>,
}

impl LayerSearch<'_, '_> {
    fn run(&mut self, chosen: FixedBitSet, acc: ClosedSubset, so_far: Option<Arc<Decomp>>) -> Option<Arc<Decomp>> {
        let p = self.rec.p;
        if chosen.count_ones(..) == self.verts.len() {
            return so_far.filter(|_| acc == *self.u);
        }
        if self.failed.contains(&chosen) {
            return None;
        }
        let k = self.k as isize;
        let c = p.boundary(&acc, k, Sign::Plus);
        for i in 0..self.verts.len() {
            if chosen.contains(i) || !self.preds[i].iter().all(|&j| chosen.contains(j)) {
                continue;
            }
            let layer = p.closure_of(self.verts[i]).union(&c);
            if p.boundary(&layer, k, Sign::Minus) != c || acc.intersection(&layer) != c {
                continue;
            }
            let Some(d) = self.rec.decompose(&layer) else { continue };
            let next_acc = acc.union(&layer);
            let next = match &so_far {
                None => d,
                Some(prev) => Arc::new(Decomp {
                    subset: next_acc.clone(),
                    node: Node::Paste {
                        left: prev.clone(),
                        right: d,
                        k: self.k,
                    },
                }),
            };
            let mut next_chosen = chosen.clone();
            next_chosen.insert(i);
            if let Some(found) = self.run(next_chosen, next_acc, Some(next)) {
                return Some(found);
            }
        }
        self.failed.insert(chosen);
        None
    }
}

/// A witness for the whole poset, if it is a molecule.
pub fn recognize(p: &OgPoset) -> Option<Witness> {
    Recognizer::new(p).witness(&p.full_subset())
}

pub fn is_molecule(p: &OgPoset) -> bool {
    recognize(p).is_some()
}

/// A molecule with a greatest element.
pub fn is_atom(p: &OgPoset) -> bool {
    p.maximal(&p.full_subset()).len() == 1 && is_molecule(p)
}

/// Every cl{x} is an atom.
pub fn is_regular_directed_complex(p: &OgPoset) -> bool {
    let mut rec = Recognizer::new(p);
    p.elements().all(|x| rec.is_molecule(&p.closure_of(x)))
}

/// The first element whose closure is not an atom, if any.
pub fn first_non_atom(p: &OgPoset) -> Option<ElemRef> {
    let mut rec = Recognizer::new(p);
    p.elements().find(|&x| !rec.is_molecule(&p.closure_of(x)))
}

/// ∂ₖᵅ(∂ₙᵝU) = ∂ₖᵅU for all k < n ≤ dim U.
pub fn is_globular(p: &OgPoset, u: &ClosedSubset) -> bool {
    let dim = p.subset_dim(u);
    (1..=dim).all(|n| {
        (0..n).all(|k| {
            Sign::BOTH.into_iter().all(|a| {
                let target = p.boundary(u, k, a);
                Sign::BOTH
                    .into_iter()
                    .all(|b| p.boundary(&p.boundary(u, n, b), k, a) == target)
            })
        })
    })
}

/// ∂ₙ⁻U ∩ ∂ₙ⁺U = ∂ₙ₋₁U for all n < dim U.
pub fn is_round(p: &OgPoset, u: &ClosedSubset) -> bool {
    let dim = p.subset_dim(u);
    (0..dim).all(|n| {
        p.boundary(u, n, Sign::Minus)
            .intersection(&p.boundary(u, n, Sign::Plus))
            == p.boundary_both(u, n - 1)
    })
}

/// Dimension of the union of pairwise intersections of closures of maximal elements.
pub fn frame_dim(p: &OgPoset, u: &ClosedSubset) -> isize {
    let maxes = p.maximal(u);
    let closures: Vec<ClosedSubset> = maxes.iter().map(|&x| p.closure_of(x)).collect();
    let mut dim = -1;
    for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            dim = dim.max(p.subset_dim(&closures[i].intersection(&closures[j])));
        }
    }
    dim
}

/// Least `k ≥ -1` with at most one maximal element of dimension above `k + 1`.
pub fn layering_dim(p: &OgPoset, u: &ClosedSubset) -> isize {
    let dims: Vec<isize> = p.maximal(u).iter().map(|x| x.dim as isize).collect();
    let mut k = -1;
    while dims.iter().filter(|&&d| d > k + 1).count() > 1 {
        k += 1;
    }
    k
}

/// All submolecules of a molecule `u`: factors of iterated pasting
/// decompositions, together with boundaries (unit factors).
pub fn submolecules(p: &OgPoset, u: &ClosedSubset) -> Vec<ClosedSubset> {
    submolecules_with(&mut Recognizer::new(p), u)
}

pub fn submolecules_with(rec: &mut Recognizer<'_>, u: &ClosedSubset) -> Vec<ClosedSubset> {
    let p = rec.poset();
    let mut seen: HashSet<ClosedSubset> = HashSet::new();
    let mut stack = Vec::new();
    if rec.is_molecule(u) {
        seen.insert(u.clone());
        stack.push(u.clone());
    }
    while let Some(v) = stack.pop() {
        let dim = p.subset_dim(&v);
        let mut found = Vec::new();
        for k in 0..dim {
            for s in Sign::BOTH {
                found.push(p.boundary(&v, k, s));
            }
            for (a, b) in binary_splits(rec, &v, k as usize) {
                found.push(a);
                found.push(b);
            }
        }
        for w in found {
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    let mut out: Vec<ClosedSubset> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.len(), w.to_vec(p)));
    out
}

/// Every decomposition `v = a #ₖ b` into two molecules inside `v`.
///
/// If `x -> y` in MaxFlowₖ then `y` in `a` forces `x` in `a`, so only sets of
/// maximal elements closed under predecessors are tried.
pub fn binary_splits(rec: &mut Recognizer<'_>, v: &ClosedSubset, k: usize) -> Vec<(ClosedSubset, ClosedSubset)> {
    let p = rec.poset();
    let high: Vec<ElemRef> = p.maximal(v).into_iter().filter(|x| x.dim > k).collect();
    let m = high.len();
    assert!(m <= 20, "too many maximal elements for exhaustive splitting");
    if m < 2 {
        return Vec::new();
    }
    let closures: Vec<ClosedSubset> = high.iter().map(|&x| p.closure_of(x)).collect();
    let faces: Vec<[BTreeSet<ElemRef>; 2]> = high
        .iter()
        .map(|&x| Sign::BOTH.map(|s| p.element_faces_n(x, k, s).into_iter().collect()))
        .collect();
    let preds: Vec<u32> = (0..m)
        .map(|j| {
            (0..m)
                .filter(|&i| i != j && !faces[i][1].is_disjoint(&faces[j][0]))
                .fold(0, |acc, i| acc | 1 << i)
        })
        .collect();
    let lower = p.boundary(v, k as isize, Sign::Minus);
    let upper = p.boundary(v, k as isize, Sign::Plus);
    let mut out = Vec::new();
    for mask in 1..(1u32 << m) - 1 {
        if (0..m).any(|j| mask & (1 << j) != 0 && preds[j] & !mask != 0) {
            continue;
        }
        let (mut left, mut right) = (lower.clone(), upper.clone());
        for (i, cl) in closures.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left = left.union(cl);
            } else {
                right = right.union(cl);
            }
        }
        let mid = p.boundary(&left, k as isize, Sign::Plus);
        if left.intersection(&right) != mid
            || p.boundary(&right, k as isize, Sign::Minus) != mid
            || left.union(&right) != *v
        {
            continue;
        }
        if rec.is_molecule(&left) && rec.is_molecule(&right) {
            out.push((left, right));
        }
    }
    out
}

/// A standalone molecule together with a construction witness.
#[derive(Clone, Debug)]
pub struct Molecule {
    poset: OgPoset,
    witness: Witness,
}

impl Molecule {
    pub fn point() -> Self {
        Self {
            poset: OgPoset::point(),
            witness: Witness::Point,
        }
    }

    /// Recognizes `poset`.
    pub fn new(poset: OgPoset) -> Result<Self> {
        let witness = recognize(&poset).ok_or(Error::NotAMolecule)?;
        Ok(Self { poset, witness })
    }

    pub fn poset(&self) -> &OgPoset {
        &self.poset
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    pub fn into_poset(self) -> OgPoset {
        self.poset
    }

    pub fn dim(&self) -> usize {
        self.poset.dim() as usize
    }

    /// ∂ₖᵅ as a standalone molecule.
    pub fn boundary(&self, k: isize, sign: Sign) -> Result<Molecule> {
        let b = self.poset.boundary(&self.poset.full_subset(), k, sign);
        Molecule::new(self.poset.restrict(&b).0)
    }

    pub fn is_round(&self) -> bool {
        is_round(&self.poset, &self.poset.full_subset())
    }

    /// Pasting along the `k`-boundary, `self` first.
    pub fn paste(&self, other: &Molecule, k: usize) -> Result<Molecule> {
        Ok(self.paste_with_inclusions(other, k)?.0)
    }

    /// Pasting, with the inclusions of both factors into the result.
    pub fn paste_with_inclusions(&self, other: &Molecule, k: usize) -> Result<(Molecule, OgMap, OgMap)> {
        let bound = self.dim().min(other.dim());
        if k >= bound {
            return Err(Error::Range {
                what: "pasting dimension",
                value: k as isize,
                bound: format!("must be below {bound}"),
            });
        }
        let (u, v) = (&self.poset, &other.poset);
        let bu = u.boundary(&u.full_subset(), k as isize, Sign::Plus);
        let bv = v.boundary(&v.full_subset(), k as isize, Sign::Minus);
        let glue = boundary_gluing(u, &bu, v, &bv)?
            .ok_or_else(|| Error::Composition(format!("output {k}-boundary does not match input {k}-boundary")))?;
        let (poset, incl_u, incl_v) = glue_along(u, v, &glue, Vec::new());
        let witness = Witness::Paste {
            left: Box::new(self.witness.clone()),
            right: Box::new(other.witness.clone()),
            k,
        };
        Ok((Molecule { poset, witness }, incl_u, incl_v))
    }

    /// The rewrite of `input` into `output`: both round of equal dimension `n`,
    /// glued along their `(n-1)`-boundaries, with a new top element.
    pub fn atom(input: &Molecule, output: &Molecule) -> Result<Molecule> {
        let n = input.dim();
        if output.dim() != n {
            return Err(Error::Precondition(format!(
                "rewrite sides have dimensions {n} and {}",
                output.dim()
            )));
        }
        if !input.is_round() || !output.is_round() {
            return Err(Error::Precondition("rewrite sides must be round".into()));
        }
        let (u, v) = (&input.poset, &output.poset);
        let mut glue: HashMap<ElemRef, ElemRef> = HashMap::new();
        for s in Sign::BOTH.into_iter().filter(|_| n > 0) {
            let bu = u.boundary(&u.full_subset(), n as isize - 1, s);
            let bv = v.boundary(&v.full_subset(), n as isize - 1, s);
            let part = boundary_gluing(u, &bu, v, &bv)?
                .ok_or_else(|| Error::Composition(format!("{s} boundaries of the two sides differ")))?;
            for (y, x) in part {
                if *glue.entry(y).or_insert(x) != x {
                    return Err(Error::Composition("boundary isomorphisms disagree".into()));
                }
            }
        }
        let top = Element::new(
            (0..u.grade_len(n)).collect(),
            Vec::new(), // filled in by glue_along
        );
        let (poset, _, _) = glue_along(u, v, &glue, vec![top]);
        let witness = Witness::Atom {
            input: Box::new(input.witness.clone()),
            output: Box::new(output.witness.clone()),
        };
        Ok(Molecule { poset, witness })
    }

    /// Builds a molecule from a witness with the constructors.
    pub fn from_witness(w: &Witness) -> Result<Molecule> {
        match w {
            Witness::Point => Ok(Molecule::point()),
            Witness::Paste { left, right, k } => Self::from_witness(left)?.paste(&Self::from_witness(right)?, *k),
            Witness::Atom { input, output } => {
                Molecule::atom(&Self::from_witness(input)?, &Self::from_witness(output)?)
            }
        }
    }
}

/// The gluing `bv ∋ y ↦ x ∈ bu` given by the unique isomorphism of the two boundaries.
fn boundary_gluing(
    u: &OgPoset,
    bu: &ClosedSubset,
    v: &OgPoset,
    bv: &ClosedSubset,
) -> Result<Option<HashMap<ElemRef, ElemRef>>> {
    let (pu, eu) = u.restrict(bu);
    let (pv, ev) = v.restrict(bv);
    let Some(iso) = unique_molecule_iso(&pu, &pv)? else {
        return Ok(None);
    };
    let mut map = HashMap::new();
    for b in pu.elements() {
        let img = iso.apply(&pu, b);
        map.insert(ev[pv.id(img)], eu[pu.id(b)]);
    }
    Ok(Some(map))
}

/// Disjoint union of `u` and `v` with `v`'s elements in `glue` identified with
/// their `u` partners. Extra top elements may be appended one grade above `u`;
/// their output faces are set to the images of `v`'s top grade.
fn glue_along(
    u: &OgPoset,
    v: &OgPoset,
    glue: &HashMap<ElemRef, ElemRef>,
    tops: Vec<Element>,
) -> (OgPoset, OgMap, OgMap) {
    let mut grades: Vec<Vec<Element>> = u.grades().to_vec();
    let mut vmap: Vec<ElemRef> = Vec::with_capacity(v.len());
    for y in v.elements() {
        let image = match glue.get(&y) {
            Some(&x) => x,
            None => {
                while grades.len() <= y.dim {
                    grades.push(Vec::new());
                }
                let el = v.element(y);
                let lift = |list: &[usize]| -> Vec<usize> {
                    let mut out: Vec<usize> = list
                        .iter()
                        .map(|&j| vmap[v.id(ElemRef::new(y.dim - 1, j))].index)
                        .collect();
                    out.sort_unstable();
                    out
                };
                let new = if y.dim == 0 {
                    Element::point()
                } else {
                    Element::new(lift(&el.faces_in), lift(&el.faces_out))
                };
                grades[y.dim].push(new);
                ElemRef::new(y.dim, grades[y.dim].len() - 1)
            }
        };
        vmap.push(image);
    }
    if !tops.is_empty() {
        let n = u.dim().max(0) as usize;
        let mut out: Vec<usize> = v.grade(n).map(|y| vmap[v.id(y)].index).collect();
        out.sort_unstable();
        let tops = tops
            .into_iter()
            .map(|t| Element::new(t.faces_in, out.clone()))
            .collect();
        grades.push(tops);
    }
    let poset = OgPoset::new(grades).expect("gluing molecules yields a valid poset");
    (poset, OgMap::identity(u), OgMap::new(vmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::morphism::{are_isomorphic, is_inclusion};

    fn e(d: usize, i: usize) -> ElemRef {
        ElemRef::new(d, i)
    }

    fn arrow() -> Molecule {
        Molecule::atom(&Molecule::point(), &Molecule::point()).unwrap()
    }

    #[test]
    fn point_basics() {
        let p = Molecule::point();
        assert_eq!(p.poset().len(), 1);
        assert_eq!(p.dim(), 0);
        assert!(p.is_round());
        let full = p.poset().full_subset();
        assert_eq!(p.poset().boundary(&full, 0, Sign::Minus), full);
    }

    #[test]
    fn atom_of_points_is_the_arrow() {
        let a = arrow();
        assert_eq!(a.poset(), &catalog::arrow());
        assert!(matches!(a.witness(), Witness::Atom { .. }));
    }

    #[test]
    fn atom_of_arrows_is_the_globe() {
        let a = arrow();
        let g = Molecule::atom(&a, &a).unwrap();
        assert!(are_isomorphic(g.poset(), &catalog::globe2()));
        assert_eq!(g.poset().grade_len(1), 2);
        assert_eq!(g.poset().grade_len(2), 1);
    }

    #[test]
    fn arrow_then_arrow_is_the_path() {
        let a = arrow();
        let (path, i, j) = a.paste_with_inclusions(&a, 0).unwrap();
        assert_eq!(path.poset().len(), 5);
        assert!(are_isomorphic(path.poset(), &catalog::path2()));
        assert!(is_inclusion(a.poset(), path.poset(), &i));
        assert!(is_inclusion(a.poset(), path.poset(), &j));
    }

    #[test]
    fn paste_rejects_bad_inputs() {
        let a = arrow();
        assert!(matches!(a.paste(&a, 1), Err(Error::Range { .. })));
        let path = a.paste(&a, 0).unwrap();
        let g = Molecule::atom(&a, &a).unwrap();
        // the globe's output 1-boundary is one arrow, not a path
        assert!(matches!(
            g.paste(&Molecule::atom(&path, &path).unwrap(), 1),
            Err(Error::Composition(_))
        ));
    }

    #[test]
    fn atom_rejects_bad_inputs() {
        let a = arrow();
        assert!(matches!(
            Molecule::atom(&a, &Molecule::point()),
            Err(Error::Precondition(_))
        ));
        let pp = Molecule::point().paste(&Molecule::point(), 0);
        assert!(pp.is_err());
        let g = Molecule::atom(&a, &a).unwrap();
        let side_by_side = g.paste(&g, 0).unwrap();
        assert!(!side_by_side.is_round());
        assert!(matches!(
            Molecule::atom(&side_by_side, &side_by_side),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recognition_of_fixtures() {
        for (name, p) in catalog::all() {
            let expected = !matches!(name, "cospan" | "loop_graph" | "pinched_triangles");
            assert_eq!(is_molecule(&p), expected, "{name}");
        }
    }

    #[test]
    fn whiskered_globe_witness_rebuilds() {
        let p = catalog::whiskered_globe();
        let w = recognize(&p).unwrap();
        match &w {
            Witness::Paste { left, right, k: 0 } => {
                assert!(matches!(**left, Witness::Atom { .. }));
                assert_eq!(
                    **right,
                    Witness::Atom {
                        input: Box::new(Witness::Point),
                        output: Box::new(Witness::Point)
                    }
                );
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let rebuilt = Molecule::from_witness(&w).unwrap();
        assert!(unique_molecule_iso(rebuilt.poset(), &p).unwrap().is_some());
    }

    #[test]
    fn regular_directed_complexes() {
        assert!(is_regular_directed_complex(&catalog::whiskered_globe()));
        assert!(is_regular_directed_complex(&catalog::loop_graph()));
        let bad = OgPoset::new(vec![vec![Element::point(); 2], vec![Element::new(vec![0, 1], vec![])]]).unwrap();
        assert!(!is_regular_directed_complex(&bad));
        assert_eq!(first_non_atom(&bad), Some(e(1, 0)));
    }

    #[test]
    fn globular_and_round() {
        let p = catalog::two_globes();
        let u = p.full_subset();
        assert!(is_globular(&p, &u));
        assert!(!is_round(&p, &u));
        let inter = p
            .boundary(&u, 1, Sign::Minus)
            .intersection(&p.boundary(&u, 1, Sign::Plus));
        assert!(p.boundary_both(&u, 0).is_subset(&inter) && inter != p.boundary_both(&u, 0));
        let g = catalog::non_acyclic_atom();
        for x in g.elements() {
            assert!(is_round(&g, &g.closure_of(x)));
        }
    }

    #[test]
    fn dimensions_of_examples() {
        let p = catalog::two_globes();
        assert_eq!(frame_dim(&p, &p.full_subset()), 0);
        assert_eq!(layering_dim(&p, &p.full_subset()), 1);
        let a = catalog::non_acyclic_atom();
        assert_eq!(frame_dim(&a, &a.full_subset()), -1);
        assert_eq!(layering_dim(&a, &a.full_subset()), -1);
    }

    #[test]
    fn submolecules_of_small_shapes() {
        let p = OgPoset::point();
        assert_eq!(submolecules(&p, &p.full_subset()), vec![p.full_subset()]);
        let a = catalog::arrow();
        let subs = submolecules(&a, &a.full_subset());
        let expected = vec![
            a.closure(&[e(0, 0)]).unwrap(),
            a.closure(&[e(0, 1)]).unwrap(),
            a.full_subset(),
        ];
        assert_eq!(subs, expected);
    }

    #[test]
    fn submolecules_of_two_globes() {
        let p = catalog::two_globes();
        let subs = submolecules(&p, &p.full_subset());
        for x in p.grade(1) {
            assert!(subs.contains(&p.closure_of(x)), "{x}");
        }
        for x in p.grade(0) {
            assert!(subs.contains(&p.closure_of(x)), "{x}");
        }
        // each globe with its whiskers
        let left = p.closure(&[e(2, 0), e(1, 1), e(1, 2)]).unwrap();
        let right = p.closure(&[e(1, 0), e(1, 1), e(2, 1)]).unwrap();
        assert!(subs.contains(&left) && subs.contains(&right));
        assert!(subs.contains(&p.closure_of(e(2, 0))));
    }

    #[test]
    fn witness_json_shape() {
        let w = arrow().witness().clone();
        assert_eq!(w.to_json(), r#"{"atom":{"input":"point","output":"point"}}"#);
        let back: Witness = serde_json::from_str(&w.to_json()).unwrap();
        assert_eq!(back, w);
    }
}
