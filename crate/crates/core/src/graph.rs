use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::ogposet::{ElemRef, OgPoset, Sign};

/// A finite directed graph on elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: BTreeSet<ElemRef>,
    edges: BTreeSet<(ElemRef, ElemRef)>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(
        vertices: impl IntoIterator<Item = ElemRef>,
        edges: impl IntoIterator<Item = (ElemRef, ElemRef)>,
    ) -> Self {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_vertex(&mut self, v: ElemRef) {
        self.vertices.insert(v);
    }

    /// Adds an edge, inserting its endpoints if needed.
    pub fn add_edge(&mut self, from: ElemRef, to: ElemRef) {
        self.vertices.insert(from);
        self.vertices.insert(to);
        self.edges.insert((from, to));
    }

    pub fn vertices(&self) -> &BTreeSet<ElemRef> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(ElemRef, ElemRef)> {
        &self.edges
    }

    pub fn has_edge(&self, from: ElemRef, to: ElemRef) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn is_discrete(&self) -> bool {
        self.edges.is_empty()
    }

    fn successors(&self) -> BTreeMap<ElemRef, Vec<ElemRef>> {
        let mut succ: BTreeMap<ElemRef, Vec<ElemRef>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            succ.get_mut(&a).expect("edge endpoints are vertices").push(b);
        }
        succ
    }

    /// Strongly connected components in reverse topological order (Tarjan).
    pub fn strongly_connected_components(&self) -> Vec<Vec<ElemRef>> {
        struct State {
            index: BTreeMap<ElemRef, usize>,
            low: BTreeMap<ElemRef, usize>,
            on_stack: BTreeSet<ElemRef>,
            stack: Vec<ElemRef>,
            out: Vec<Vec<ElemRef>>,
        }
        let succ = self.successors();
        let mut st = State {
            index: BTreeMap::new(),
            low: BTreeMap::new(),
            on_stack: BTreeSet::new(),
            stack: Vec::new(),
            out: Vec::new(),
        };
        // iterative DFS: (vertex, next successor position)
        for &root in &self.vertices {
            if st.index.contains_key(&root) {
                continue;
            }
            let mut call: Vec<(ElemRef, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos == 0 && !st.index.contains_key(&v) {
                    let n = st.index.len();
                    st.index.insert(v, n);
                    st.low.insert(v, n);
                    st.stack.push(v);
                    st.on_stack.insert(v);
                }
                let next = succ[&v].get(*pos).copied();
                *pos += 1;
                match next {
                    Some(w) if !st.index.contains_key(&w) => call.push((w, 0)),
                    Some(w) => {
                        if st.on_stack.contains(&w) {
                            let lw = st.index[&w];
                            let lv = st.low.get_mut(&v).unwrap();
                            *lv = (*lv).min(lw);
                        }
                    }
                    None => {
                        call.pop();
                        if let Some(&(parent, _)) = call.last() {
                            let lv = st.low[&v];
                            let lp = st.low.get_mut(&parent).unwrap();
                            *lp = (*lp).min(lv);
                        }
                        if st.low[&v] == st.index[&v] {
                            let mut comp = Vec::new();
                            loop {
                                let w = st.stack.pop().unwrap();
                                st.on_stack.remove(&w);
                                comp.push(w);
                                if w == v {
                                    break;
                                }
                            }
                            comp.sort();
                            st.out.push(comp);
                        }
                    }
                }
            }
        }
        st.out
    }

    /// One directed cycle, if any.
    ///
    /// Picks the non-trivial component with the smallest vertex and returns a
    /// shortest cycle through that vertex, starting there. The closing vertex
    /// is not repeated.
    pub fn find_cycle(&self) -> Option<Vec<ElemRef>> {
        if let Some(&(v, _)) = self.edges.iter().find(|(a, b)| a == b) {
            let loops_first = self
                .strongly_connected_components()
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| c[0])
                .min();
            if loops_first.is_none_or(|m| v < m) {
                return Some(vec![v]);
            }
        }
        let comp = self
            .strongly_connected_components()
            .into_iter()
            .filter(|c| c.len() > 1)
            .min_by_key(|c| c[0])?;
        let members: BTreeSet<ElemRef> = comp.iter().copied().collect();
        let start = comp[0];
        let succ = self.successors();
        let mut parent: BTreeMap<ElemRef, ElemRef> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &succ[&v] {
                if !members.contains(&w) {
                    continue;
                }
                if w == start {
                    let mut path = vec![v];
                    let mut cur = v;
                    while cur != start {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if w != start && !parent.contains_key(&w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("a non-trivial strongly connected component contains a cycle")
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Whether `path` (closing edge implied) is a cycle of this graph.
    pub fn contains_cycle(&self, path: &[ElemRef]) -> bool {
        !path.is_empty()
            && path
                .iter()
                .zip(path.iter().cycle().skip(1))
                .all(|(&a, &b)| self.has_edge(a, b))
    }

    /// All topological sorts, by repeatedly removing the smallest available source.
    ///
    /// The result is in lexicographic order. Empty when the graph has a cycle.
    pub fn topological_sorts(&self) -> Vec<Vec<ElemRef>> {
        let mut out = Vec::new();
        self.visit_topological_sorts(&mut |s| {
            out.push(s.to_vec());
            true
        });
        out
    }

    /// Calls `f` on each topological sort in lexicographic order until it returns `false`.
    pub fn visit_topological_sorts(&self, f: &mut dyn FnMut(&[ElemRef]) -> bool) {
        let verts: Vec<ElemRef> = self.vertices.iter().copied().collect();
        let pos: BTreeMap<ElemRef, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut indeg = vec![0usize; verts.len()];
        let mut succ = vec![Vec::new(); verts.len()];
        for (a, b) in &self.edges {
            indeg[pos[b]] += 1;
            succ[pos[a]].push(pos[b]);
        }
        let mut used = vec![false; verts.len()];
        let mut current = Vec::with_capacity(verts.len());
        fn go(
            verts: &[ElemRef],
            succ: &[Vec<usize>],
            indeg: &mut [usize],
            used: &mut [bool],
            current: &mut Vec<ElemRef>,
            f: &mut dyn FnMut(&[ElemRef]) -> bool,
        ) -> bool {
            if current.len() == verts.len() {
                return f(current);
            }
            for i in 0..verts.len() {
                if used[i] || indeg[i] != 0 {
                    continue;
                }
                used[i] = true;
                current.push(verts[i]);
                for &j in &succ[i] {
                    indeg[j] -= 1;
                }
                let keep_going = go(verts, succ, indeg, used, current, f);
                for &j in &succ[i] {
                    indeg[j] += 1;
                }
                current.pop();
                used[i] = false;
                if !keep_going {
                    return false;
                }
            }
            true
        }
        go(&verts, &succ, &mut indeg, &mut used, &mut current, f);
    }

    pub fn count_topological_sorts(&self) -> usize {
        let mut n = 0;
        self.visit_topological_sorts(&mut |_| {
            n += 1;
            true
        });
        n
    }

    /// Same vertices, every edge reversed.
    pub fn converse(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn induced(&self, keep: impl Fn(ElemRef) -> bool) -> Self {
        Self {
            vertices: self.vertices.iter().copied().filter(|&v| keep(v)).collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| keep(a) && keep(b))
                .collect(),
        }
    }

    /// Relabels vertices; edges follow.
    pub fn map_vertices(&self, f: impl Fn(ElemRef) -> ElemRef) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            edges: self.edges.iter().map(|&(a, b)| (f(a), f(b))).collect(),
        }
    }

    /// Whether every edge of `self` is an edge of `other` after applying `f`.
    pub fn is_homomorphism_into(&self, other: &Self, f: impl Fn(ElemRef) -> ElemRef) -> bool {
        self.vertices.iter().all(|&v| other.vertices.contains(&f(v)))
            && self.edges.iter().all(|&(a, b)| other.has_edge(f(a), f(b)))
    }

    pub fn has_path(&self, from: ElemRef, to: ElemRef) -> bool {
        if from == to {
            return true;
        }
        let succ = self.successors();
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in succ.get(&v).into_iter().flatten() {
                if w == to {
                    return true;
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        false
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_with(name, |_, _| None)
    }

    /// DOT text with sorted vertex and edge lines; `attr` may add an edge attribute list.
    pub fn to_dot_with(&self, name: &str, attr: impl Fn(ElemRef, ElemRef) -> Option<&'static str>) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{name}\" {{").unwrap();
        for v in &self.vertices {
            writeln!(s, "  \"{v}\";").unwrap();
        }
        for &(a, b) in &self.edges {
            match attr(a, b) {
                Some(at) => writeln!(s, "  \"{a}\" -> \"{b}\" [{at}];").unwrap(),
                None => writeln!(s, "  \"{a}\" -> \"{b}\";").unwrap(),
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The oriented Hasse diagram: `x -> y` iff `x ∈ Δ⁻y` or `y ∈ Δ⁺x`.
pub fn oriented_hasse(p: &OgPoset) -> DirectedGraph {
    let mut g = DirectedGraph::from_parts(p.elements(), []);
    for y in p.elements() {
        for x in p.faces(y, Sign::Minus) {
            g.add_edge(x, y);
        }
        for x in p.faces(y, Sign::Plus) {
            g.add_edge(y, x);
        }
    }
    g
}

/// DOT for the oriented Hasse diagram, input-face edges dashed.
pub fn hasse_dot(p: &OgPoset, name: &str) -> String {
    oriented_hasse(p).to_dot_with(name, |a, b| {
        (a.dim + 1 == b.dim && p.face_sign(b, a) == Some(Sign::Minus)).then_some("style=dashed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn v(i: usize) -> ElemRef {
        ElemRef::new(0, i)
    }

    #[test]
    fn hasse_of_small_shapes() {
        let g = oriented_hasse(&OgPoset::point());
        assert_eq!((g.vertices().len(), g.edges().len()), (1, 0));
        let g = oriented_hasse(&catalog::arrow());
        let e = ElemRef::new(1, 0);
        assert!(g.has_edge(v(0), e) && g.has_edge(e, v(1)));
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn cycle_of_a_triangle() {
        let g = DirectedGraph::from_parts([], [(v(2), v(0)), (v(0), v(1)), (v(1), v(2)), (v(1), v(3))]);
        assert_eq!(g.find_cycle(), Some(vec![v(0), v(1), v(2)]));
        assert!(g.contains_cycle(&[v(1), v(2), v(0)]));
        assert!(!g.contains_cycle(&[v(1), v(3)]));
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let g = DirectedGraph::from_parts([], [(v(1), v(1))]);
        assert_eq!(g.find_cycle(), Some(vec![v(1)]));
    }

    #[test]
    fn sorts_of_a_diamond() {
        let g = DirectedGraph::from_parts([], [(v(0), v(1)), (v(0), v(2)), (v(1), v(3)), (v(2), v(3))]);
        assert_eq!(
            g.topological_sorts(),
            vec![vec![v(0), v(1), v(2), v(3)], vec![v(0), v(2), v(1), v(3)]]
        );
        assert_eq!(DirectedGraph::new().topological_sorts(), vec![Vec::<ElemRef>::new()]);
    }

    #[test]
    fn dot_is_sorted() {
        let g = DirectedGraph::from_parts([v(1)], [(v(0), v(1))]);
        assert_eq!(
            g.to_dot("g"),
            "digraph \"g\" {\n  \"(0,0)\";\n  \"(0,1)\";\n  \"(0,0)\" -> \"(0,1)\";\n}\n"
        );
    }

    #[test]
    fn hasse_dot_dashes_inputs() {
        let dot = hasse_dot(&catalog::arrow(), "arrow");
        assert!(dot.contains("\"(0,0)\" -> \"(1,0)\" [style=dashed];"));
        assert!(dot.contains("\"(1,0)\" -> \"(0,1)\";"));
    }

    fn arb_graph() -> impl Strategy<Value = DirectedGraph> {
        proptest::collection::vec((0..7usize, 0..7usize), 0..14)
            .prop_map(|es| DirectedGraph::from_parts((0..7).map(v), es.into_iter().map(|(a, b)| (v(a), v(b)))))
    }

    // Brute-force oracle: a graph is acyclic iff repeatedly deleting sinks empties it.
    fn acyclic_by_sink_removal(g: &DirectedGraph) -> bool {
        let mut alive: BTreeSet<ElemRef> = g.vertices().clone();
        loop {
            let sink = alive
                .iter()
                .copied()
                .find(|&x| !g.edges().iter().any(|&(a, b)| a == x && alive.contains(&b)));
            match sink {
                Some(s) => {
                    alive.remove(&s);
                }
                None => return alive.is_empty(),
            }
        }
    }

    proptest! {
        #[test]
        fn cycle_detection_agrees_with_sink_removal(g in arb_graph()) {
            prop_assert_eq!(g.is_acyclic(), acyclic_by_sink_removal(&g));
            if let Some(c) = g.find_cycle() {
                prop_assert!(g.contains_cycle(&c));
            }
        }

        #[test]
        fn sorts_respect_edges(g in arb_graph()) {
            let sorts = g.topological_sorts();
            prop_assert_eq!(sorts.is_empty(), !g.is_acyclic());
            for s in &sorts {
                let pos: BTreeMap<_, _> = s.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                for &(a, b) in g.edges() {
                    prop_assert!(pos[&a] < pos[&b]);
                }
            }
            let mut sorted = sorts.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted, sorts);
        }

        #[test]
        fn components_partition_vertices(g in arb_graph()) {
            let mut all: Vec<ElemRef> = g.strongly_connected_components().into_iter().flatten().collect();
            all.sort();
            prop_assert_eq!(all, g.vertices().iter().copied().collect::<Vec<_>>());
        }
    }
}
