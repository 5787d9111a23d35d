//! Suspension, Gray product, join and duals.

use std::collections::{BTreeSet, HashMap};

use crate::ogposet::{ElemRef, Element, OgPoset, Sign};

/// Element of ΣP corresponding to `x ∈ P`.
pub fn suspended(x: ElemRef) -> ElemRef {
    ElemRef::new(x.dim + 1, x.index)
}

pub const BOTTOM_MINUS: ElemRef = ElemRef::new(0, 0);
pub const BOTTOM_PLUS: ElemRef = ElemRef::new(0, 1);

/// ΣP: two new 0-cells ⊥⁻, ⊥⁺ and one element Σx of dimension `dim x + 1`
/// per `x`, with each Σx for `x ∈ P₀` running from ⊥⁻ to ⊥⁺.
pub fn suspension(p: &OgPoset) -> OgPoset {
    let mut grades = vec![vec![Element::point(), Element::point()]];
    for (d, g) in p.grades().iter().enumerate() {
        grades.push(
            g.iter()
                .map(|el| {
                    if d == 0 {
                        Element::new(vec![0], vec![1])
                    } else {
                        el.clone()
                    }
                })
                .collect(),
        );
    }
    OgPoset::new(grades).expect("suspension of a valid poset is valid")
}

/// A Gray product with the correspondence between its elements and pairs.
#[derive(Clone, Debug)]
pub struct GrayProduct {
    pub poset: OgPoset,
    pairs: Vec<Vec<(ElemRef, ElemRef)>>,
    index: HashMap<(ElemRef, ElemRef), ElemRef>,
}

impl GrayProduct {
    /// The element `x ⊗ y`.
    pub fn element(&self, x: ElemRef, y: ElemRef) -> ElemRef {
        self.index[&(x, y)]
    }

    pub fn pair(&self, e: ElemRef) -> (ElemRef, ElemRef) {
        self.pairs[e.dim][e.index]
    }
}

/// P ⊗ Q. Within each dimension, pairs are ordered by `(x, y)`.
pub fn gray(p: &OgPoset, q: &OgPoset) -> GrayProduct {
    let dim = (p.dim() + q.dim()).max(-1);
    let mut pairs: Vec<Vec<(ElemRef, ElemRef)>> = vec![Vec::new(); (dim + 1) as usize];
    if !p.is_empty() && !q.is_empty() {
        for x in p.elements() {
            for y in q.elements() {
                pairs[x.dim + y.dim].push((x, y));
            }
        }
    }
    let mut index = HashMap::new();
    for (n, g) in pairs.iter_mut().enumerate() {
        g.sort();
        for (i, &pair) in g.iter().enumerate() {
            index.insert(pair, ElemRef::new(n, i));
        }
    }
    let grades = pairs
        .iter()
        .map(|g| {
            g.iter()
                .map(|&(x, y)| {
                    let faces = |a: Sign| -> Vec<usize> {
                        let b = if x.dim % 2 == 0 { a } else { a.flip() };
                        let mut v: Vec<usize> = p
                            .faces(x, a)
                            .map(|z| index[&(z, y)].index)
                            .chain(q.faces(y, b).map(|w| index[&(x, w)].index))
                            .collect();
                        v.sort_unstable();
                        v
                    };
                    Element::new(faces(Sign::Minus), faces(Sign::Plus))
                })
                .collect()
        })
        .collect();
    let poset = OgPoset::new(grades).expect("Gray product of valid posets is valid");
    GrayProduct { poset, pairs, index }
}

/// A join with the correspondence between its elements and pairs, where
/// `None` stands for the empty side.
#[derive(Clone, Debug)]
pub struct Join {
    pub poset: OgPoset,
    index: HashMap<(Option<ElemRef>, Option<ElemRef>), ElemRef>,
}

impl Join {
    pub fn element(&self, x: Option<ElemRef>, y: Option<ElemRef>) -> ElemRef {
        self.index[&(x, y)]
    }
}

fn augmented(x: Option<ElemRef>) -> ElemRef {
    match x {
        None => ElemRef::new(0, 0),
        Some(x) => ElemRef::new(x.dim + 1, x.index),
    }
}

/// P ⋆ Q, computed as the Gray product of the augmentations with the least element removed.
pub fn join(p: &OgPoset, q: &OgPoset) -> Join {
    let (ap, aq) = (p.augment(), q.augment());
    let g = gray(&ap, &aq);
    let poset = g
        .poset
        .diminish()
        .expect("Gray product of augmentations has a positive least element");
    let lift = |x: ElemRef| -> Option<ElemRef> { (x.dim > 0).then(|| ElemRef::new(x.dim - 1, x.index)) };
    let mut index = HashMap::new();
    for e in g.poset.elements().filter(|e| e.dim > 0) {
        let (x, y) = g.pair(e);
        index.insert((lift(x), lift(y)), ElemRef::new(e.dim - 1, e.index));
    }
    debug_assert!(index
        .keys()
        .all(|&(x, y)| g.element(augmented(x), augmented(y)).dim > 0));
    Join { poset, index }
}

/// The J-dual: input and output faces swapped in the dimensions listed in `dims`.
pub fn dual(p: &OgPoset, dims: &BTreeSet<usize>) -> OgPoset {
    let grades = p
        .grades()
        .iter()
        .enumerate()
        .map(|(d, g)| {
            g.iter()
                .map(|el| {
                    if d > 0 && dims.contains(&d) {
                        Element::new(el.faces_out.clone(), el.faces_in.clone())
                    } else {
                        el.clone()
                    }
                })
                .collect()
        })
        .collect();
    let out = OgPoset::new(grades).expect("dual of a valid poset is valid");
    match p.name() {
        Some(n) => out.with_name(n),
        None => out,
    }
}

/// The dual in every positive dimension.
pub fn total_dual(p: &OgPoset) -> OgPoset {
    let dims = (1..p.grades().len()).collect();
    dual(p, &dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::morphism::are_isomorphic;

    fn e(d: usize, i: usize) -> ElemRef {
        ElemRef::new(d, i)
    }

    #[test]
    fn suspension_of_point_is_the_arrow() {
        assert_eq!(suspension(&OgPoset::point()), catalog::arrow());
    }

    #[test]
    fn suspension_of_arrow_is_the_globe() {
        assert!(are_isomorphic(&suspension(&catalog::arrow()), &catalog::globe2()));
    }

    #[test]
    fn gray_unit() {
        let p = catalog::whiskered_globe();
        assert!(are_isomorphic(&gray(&OgPoset::point(), &p).poset, &p));
        assert!(are_isomorphic(&gray(&p, &OgPoset::point()).poset, &p));
        assert!(gray(&OgPoset::empty(), &p).poset.is_empty());
    }

    #[test]
    fn gray_square() {
        let a = catalog::arrow();
        let g = gray(&a, &a);
        let sq = &g.poset;
        assert_eq!((sq.grade_len(0), sq.grade_len(1), sq.grade_len(2)), (4, 4, 1));
        let (s, t, f) = (e(0, 0), e(0, 1), e(1, 0));
        let top = g.element(f, f);
        let ins: BTreeSet<_> = sq.faces(top, Sign::Minus).collect();
        let outs: BTreeSet<_> = sq.faces(top, Sign::Plus).collect();
        assert_eq!(ins, BTreeSet::from([g.element(s, f), g.element(f, t)]));
        assert_eq!(outs, BTreeSet::from([g.element(t, f), g.element(f, s)]));
    }

    #[test]
    fn join_of_points_is_an_arrow() {
        let pt = OgPoset::point();
        let j = join(&pt, &pt);
        assert!(are_isomorphic(&j.poset, &catalog::arrow()));
        let edge = j.element(Some(e(0, 0)), Some(e(0, 0)));
        assert_eq!(
            j.poset.faces(edge, Sign::Minus).collect::<Vec<_>>(),
            vec![j.element(Some(e(0, 0)), None)]
        );
        assert_eq!(
            j.poset.faces(edge, Sign::Plus).collect::<Vec<_>>(),
            vec![j.element(None, Some(e(0, 0)))]
        );
    }

    #[test]
    fn join_unit() {
        let p = catalog::whiskered_globe();
        assert!(are_isomorphic(&join(&p, &OgPoset::empty()).poset, &p));
        assert!(are_isomorphic(&join(&OgPoset::empty(), &p).poset, &p));
    }

    #[test]
    fn duals() {
        let a = total_dual(&catalog::arrow());
        assert_eq!(a.faces(e(1, 0), Sign::Minus).collect::<Vec<_>>(), vec![e(0, 1)]);
        assert_eq!(a.faces(e(1, 0), Sign::Plus).collect::<Vec<_>>(), vec![e(0, 0)]);
        let p = catalog::whiskered_globe();
        for j in [vec![], vec![1], vec![2], vec![1, 2]] {
            let j: BTreeSet<usize> = j.into_iter().collect();
            assert_eq!(dual(&dual(&p, &j), &j), p);
        }
    }

    const SIX_CYCLE: [((usize, usize), (usize, usize)); 6] = [
        ((0, 1), (3, 0)),
        ((1, 1), (2, 2)),
        ((2, 1), (1, 0)),
        ((3, 0), (0, 1)),
        ((2, 2), (1, 2)),
        ((1, 4), (2, 1)),
    ];

    #[test]
    fn gray_square_of_the_unstable_atom_has_a_flow_cycle() {
        let u = catalog::gray_unstable_atom();
        let g = gray(&u, &u);
        let cycle: Vec<ElemRef> = SIX_CYCLE
            .iter()
            .map(|&((a, b), (c, d))| g.element(e(a, b), e(c, d)))
            .collect();
        let flow = crate::flow::flow_graph(&g.poset, &g.poset.full_subset(), 2);
        assert!(flow.contains_cycle(&cycle));
    }

    #[test]
    fn join_with_the_total_dual_has_a_flow_cycle() {
        let u = catalog::gray_unstable_atom();
        let j = join(&u, &total_dual(&u));
        let cycle: Vec<ElemRef> = SIX_CYCLE
            .iter()
            .map(|&((a, b), (c, d))| j.element(Some(e(a, b)), Some(e(c, d))))
            .collect();
        let flow = crate::flow::flow_graph(&j.poset, &j.poset.full_subset(), 3);
        assert!(flow.contains_cycle(&cycle));
    }

    #[test]
    fn one_dual_of_the_non_acyclic_atom_is_acyclic() {
        let u = catalog::non_acyclic_atom();
        assert!(!crate::acyclicity::is_acyclic(&u));
        assert!(crate::acyclicity::is_acyclic(&dual(&u, &BTreeSet::from([1]))));
    }

    #[test]
    fn pasting_does_not_preserve_dw_acyclicity() {
        use crate::acyclicity::{is_dw_acyclic, is_strongly_dw_acyclic};
        use crate::molecule::Molecule;
        let v = Molecule::new(catalog::pasting_partner_atom()).unwrap();
        let u = Molecule::new(catalog::non_acyclic_atom()).unwrap();
        assert!(is_strongly_dw_acyclic(v.poset()) && is_strongly_dw_acyclic(u.poset()));
        let w = v.paste(&u, 2).unwrap();
        assert!(!is_dw_acyclic(w.poset()));
    }
}
