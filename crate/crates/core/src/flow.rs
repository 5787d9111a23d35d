//! Flow graphs, orderings and layerings.
//!
//! Every function takes a closed subset `u` of an ambient poset; graphs of the
//! whole poset are obtained with `p.full_subset()`. Faces `Δₖᵅx` of a single
//! element are computed inside `cl{x}`, so they do not depend on `u`.

use std::collections::BTreeSet;

use crate::graph::DirectedGraph;
use crate::molecule::Recognizer;
use crate::ogposet::{ClosedSubset, ElemRef, OgPoset, Sign};

/// Δₖᵅx for every element of `u` of dimension above `k`.
fn k_faces(p: &OgPoset, u: &ClosedSubset, k: isize) -> Vec<(ElemRef, [BTreeSet<ElemRef>; 2])> {
    u.iter(p)
        .filter(|x| x.dim as isize > k)
        .map(|x| {
            let faces = if k < 0 {
                [BTreeSet::new(), BTreeSet::new()]
            } else {
                Sign::BOTH.map(|s| p.element_faces_n(x, k as usize, s).into_iter().collect())
            };
            (x, faces)
        })
        .collect()
}

/// Flowₖ: elements of dimension above `k`, with `x -> y` when Δₖ⁺x ∩ Δₖ⁻y ≠ ∅.
pub fn flow_graph(p: &OgPoset, u: &ClosedSubset, k: isize) -> DirectedGraph {
    let faces = k_faces(p, u, k);
    let mut g = DirectedGraph::from_parts(faces.iter().map(|(x, _)| *x), []);
    for (x, fx) in &faces {
        for (y, fy) in &faces {
            if !fx[1].is_disjoint(&fy[0]) {
                g.add_edge(*x, *y);
            }
        }
    }
    g
}

/// MaxFlowₖ: Flowₖ induced on the maximal elements.
pub fn max_flow_graph(p: &OgPoset, u: &ClosedSubset, k: isize) -> DirectedGraph {
    let maxes: BTreeSet<ElemRef> = p.maximal(u).into_iter().collect();
    let faces: Vec<_> = k_faces(p, u, k)
        .into_iter()
        .filter(|(x, _)| maxes.contains(x))
        .collect();
    let mut g = DirectedGraph::from_parts(faces.iter().map(|(x, _)| *x), []);
    for (x, fx) in &faces {
        for (y, fy) in &faces {
            if !fx[1].is_disjoint(&fy[0]) {
                g.add_edge(*x, *y);
            }
        }
    }
    g
}

/// V minus its boundary one dimension down.
pub fn interior(p: &OgPoset, v: &ClosedSubset) -> Vec<ElemRef> {
    let b = p.boundary_both(v, p.subset_dim(v) - 1);
    v.iter(p).filter(|&x| !b.contains(p, x)).collect()
}

/// ExtFlowₖ on all elements of `u`: `y -> x` for `y ∈ int ∂ₖ⁻x` and
/// `x -> y` for `y ∈ int ∂ₖ⁺x`, where `dim x > k`.
pub fn extended_flow_graph(p: &OgPoset, u: &ClosedSubset, k: isize) -> DirectedGraph {
    let mut g = DirectedGraph::from_parts(u.iter(p), []);
    if k < 0 {
        return g;
    }
    for x in u.iter(p).filter(|x| x.dim as isize > k) {
        let cl = p.closure_of(x);
        for y in interior(p, &p.boundary(&cl, k, Sign::Minus)) {
            g.add_edge(y, x);
        }
        for y in interior(p, &p.boundary(&cl, k, Sign::Plus)) {
            g.add_edge(x, y);
        }
    }
    g
}

/// All k-orderings: topological sorts of MaxFlowₖ, lexicographically.
pub fn orderings(p: &OgPoset, u: &ClosedSubset, k: isize) -> Vec<Vec<ElemRef>> {
    max_flow_graph(p, u, k).topological_sorts()
}

/// A k-layering: layers of a decomposition of `u` as an iterated k-pasting,
/// each holding exactly one maximal element of dimension above `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Layering {
    pub k: isize,
    pub layers: Vec<ClosedSubset>,
}

impl Layering {
    pub fn to_json(&self, p: &OgPoset) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "layers": self.layers.iter().map(|l| l.iter(p).map(|x| [x.dim, x.index]).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// The layers induced by an ordering, if they form a layering.
pub fn realize_ordering(
    rec: &mut Recognizer<'_>,
    u: &ClosedSubset,
    k: isize,
    ordering: &[ElemRef],
) -> Option<Layering> {
    let p = rec.poset();
    let mut acc = p.boundary(u, k, Sign::Minus);
    let mut layers = Vec::with_capacity(ordering.len());
    for &x in ordering {
        let c = p.boundary(&acc, k, Sign::Plus);
        let layer = p.closure_of(x).union(&c);
        if p.boundary(&layer, k, Sign::Minus) != c || acc.intersection(&layer) != c || !rec.is_molecule(&layer) {
            return None;
        }
        acc = acc.union(&layer);
        layers.push(layer);
    }
    (acc == *u).then_some(Layering { k, layers })
}

/// All k-layerings of a molecule, one per realizable ordering, deduplicated.
pub fn layerings(p: &OgPoset, u: &ClosedSubset, k: isize) -> Vec<Layering> {
    layerings_with(&mut Recognizer::new(p), u, k)
}

pub fn layerings_with(rec: &mut Recognizer<'_>, u: &ClosedSubset, k: isize) -> Vec<Layering> {
    let p = rec.poset();
    let mut out: Vec<Layering> = orderings(p, u, k)
        .iter()
        .filter_map(|o| realize_ordering(rec, u, k, o))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The ordering a layering induces: each layer's maximal element above `k`.
pub fn ordering_of(p: &OgPoset, layering: &Layering) -> Vec<ElemRef> {
    layering
        .layers
        .iter()
        .map(|l| {
            let tops: Vec<ElemRef> = p
                .maximal(l)
                .into_iter()
                .filter(|x| x.dim as isize > layering.k)
                .collect();
            assert_eq!(tops.len(), 1, "a layer has a single maximal element above k");
            tops[0]
        })
        .collect()
}
