//! The four acyclicity conditions and a classifier.

use serde::Serialize;

use crate::flow::{extended_flow_graph, flow_graph, max_flow_graph};
use crate::graph::{oriented_hasse, DirectedGraph};
use crate::molecule::{frame_dim, is_regular_directed_complex, submolecules_with, Recognizer};
use crate::ogposet::{ClosedSubset, OgPoset};

/// The oriented Hasse diagram has no directed cycle.
pub fn is_acyclic(p: &OgPoset) -> bool {
    oriented_hasse(p).is_acyclic()
}

/// Every ExtFlowₖ, `-1 ≤ k ≤ dim`, is acyclic.
pub fn is_strongly_dw_acyclic(p: &OgPoset) -> bool {
    let u = p.full_subset();
    (-1..=p.dim()).all(|k| extended_flow_graph(p, &u, k).is_acyclic())
}

/// Every Flowₖ, `-1 ≤ k ≤ dim`, is acyclic.
pub fn is_dw_acyclic(p: &OgPoset) -> bool {
    let u = p.full_subset();
    (-1..=p.dim()).all(|k| flow_graph(p, &u, k).is_acyclic())
}

/// Frame-acyclicity of a molecule `u`, using the dimension-3 shortcut.
pub fn is_frame_acyclic(p: &OgPoset, u: &ClosedSubset) -> bool {
    p.subset_dim(u) <= 3 || is_frame_acyclic_direct(&mut Recognizer::new(p), u)
}

/// Frame-acyclicity checked on every submolecule, without shortcuts.
pub fn is_frame_acyclic_direct(rec: &mut Recognizer<'_>, u: &ClosedSubset) -> bool {
    let p = rec.poset();
    submolecules_with(rec, u)
        .iter()
        .all(|v| max_flow_graph(p, v, frame_dim(p, v)).is_acyclic())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Why [`has_frame_acyclic_molecules`] decided as it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameReason {
    LowDimension,
    DwAcyclicRdc,
    Acyclic,
    CounterexampleFound,
    SearchExhausted,
}

/// Whether every molecule over `p` is frame-acyclic.
///
/// Positive answers come from sufficient conditions. Otherwise molecules that
/// are closed subsets of `p` are tested directly, visiting at most
/// `search_bound` closed subsets; the answer is `No` if one fails and
/// `Unknown` if none does.
pub fn has_frame_acyclic_molecules(p: &OgPoset, search_bound: usize) -> (Verdict, FrameReason) {
    if p.dim() <= 3 {
        return (Verdict::Yes, FrameReason::LowDimension);
    }
    if is_acyclic(p) {
        return (Verdict::Yes, FrameReason::Acyclic);
    }
    if is_regular_directed_complex(p) && is_dw_acyclic(p) {
        return (Verdict::Yes, FrameReason::DwAcyclicRdc);
    }
    let mut rec = Recognizer::new(p);
    let mut visited = 0;
    let mut failed = false;
    p.visit_closed_subsets(&mut |u| {
        visited += 1;
        if rec.is_molecule(u) && !is_frame_acyclic_direct(&mut rec, u) {
            failed = true;
        }
        !failed && visited < search_bound
    });
    if failed {
        (Verdict::No, FrameReason::CounterexampleFound)
    } else {
        (Verdict::Unknown, FrameReason::SearchExhausted)
    }
}

/// Cycle search result for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub cycle: Option<Vec<String>>,
}

impl Certificate {
    fn of(graph: String, g: &DirectedGraph) -> Self {
        Self {
            graph,
            vertices: g.vertices().len(),
            edges: g.edges().len(),
            cycle: g.find_cycle().map(|c| c.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub acyclic: bool,
    pub strongly_dw: bool,
    pub dw: bool,
    pub frame: Verdict,
    pub frame_reason: FrameReason,
    pub class: String,
    pub certificates: Vec<Certificate>,
}

impl Classification {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("classification serialization cannot fail")
    }

    /// The certificate for a named graph, such as `"hasse"` or `"flow:0"`.
    pub fn certificate(&self, graph: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.graph == graph)
    }
}

pub const DEFAULT_SEARCH_BOUND: usize = 4096;

/// Evaluates all four conditions and records every graph inspected.
pub fn classify(p: &OgPoset) -> Classification {
    let u = p.full_subset();
    let mut certificates = vec![Certificate::of("hasse".into(), &oriented_hasse(p))];
    for k in -1..=p.dim() {
        certificates.push(Certificate::of(format!("extflow:{k}"), &extended_flow_graph(p, &u, k)));
    }
    for k in -1..=p.dim() {
        certificates.push(Certificate::of(format!("flow:{k}"), &flow_graph(p, &u, k)));
    }
    let clean = |prefix: &str| {
        certificates
            .iter()
            .filter(|c| c.graph.starts_with(prefix))
            .all(|c| c.cycle.is_none())
    };
    let acyclic = clean("hasse");
    let strongly_dw = clean("extflow:");
    let dw = clean("flow:");
    let (frame, frame_reason) = has_frame_acyclic_molecules(p, DEFAULT_SEARCH_BOUND);
    let class = if acyclic {
        "acyclic".to_string()
    } else if strongly_dw {
        "strongly-dw-acyclic".to_string()
    } else if dw {
        "dw-acyclic".to_string()
    } else {
        match (frame, frame_reason) {
            (Verdict::Yes, FrameReason::LowDimension) => "frame-acyclic (dim ≤ 3)".to_string(),
            (Verdict::Yes, _) => "frame-acyclic".to_string(),
            (Verdict::No, _) => "not frame-acyclic".to_string(),
            (Verdict::Unknown, _) => "unknown".to_string(),
        }
    };
    Classification {
        acyclic,
        strongly_dw,
        dw,
        frame,
        frame_reason,
        class,
        certificates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ogposet::ElemRef;

    #[test]
    fn point_is_acyclic_in_every_sense() {
        let p = OgPoset::point();
        assert!(is_acyclic(&p) && is_strongly_dw_acyclic(&p) && is_dw_acyclic(&p));
        assert_eq!(classify(&p).class, "acyclic");
    }

    #[test]
    fn whiskered_globe_is_acyclic() {
        assert!(is_acyclic(&catalog::whiskered_globe()));
    }

    #[test]
    fn non_dw_acyclic_atom() {
        let p = catalog::non_dw_acyclic_atom();
        assert!(!is_dw_acyclic(&p));
        let c = classify(&p);
        assert_eq!(c.class, "frame-acyclic (dim ≤ 3)");
        let cycle = c.certificate("flow:0").unwrap().cycle.clone().unwrap();
        assert_eq!(cycle, vec!["(1,2)", "(1,5)"]);
        assert!(is_frame_acyclic(&p, &p.full_subset()));
        assert!(is_frame_acyclic_direct(&mut Recognizer::new(&p), &p.full_subset()));
    }

    #[test]
    fn non_acyclic_atom() {
        let p = catalog::non_acyclic_atom();
        assert!(is_strongly_dw_acyclic(&p));
        assert!(!is_acyclic(&p));
        let c = classify(&p);
        assert_eq!(c.class, "strongly-dw-acyclic");
        let hasse = oriented_hasse(&p);
        let e = ElemRef::new;
        assert!(hasse.contains_cycle(&[e(0, 1), e(1, 1), e(2, 0), e(3, 0), e(2, 1), e(1, 4)]));
        assert!(c.certificate("hasse").unwrap().cycle.is_some());
    }

    #[test]
    fn frame_verdicts() {
        assert_eq!(
            has_frame_acyclic_molecules(&catalog::non_dw_acyclic_atom(), 10).0,
            Verdict::Yes
        );
        assert_eq!(
            has_frame_acyclic_molecules(&catalog::loop_graph(), 10),
            (Verdict::Yes, FrameReason::LowDimension)
        );
    }

    #[test]
    fn json_keys() {
        let text = classify(&OgPoset::point()).to_json();
        for key in [
            "\"acyclic\":true",
            "\"strongly_dw\":true",
            "\"dw\":true",
            "\"frame\":\"yes\"",
            "\"certificates\":[",
        ] {
            assert!(text.contains(key), "{key} in {text}");
        }
    }
}
