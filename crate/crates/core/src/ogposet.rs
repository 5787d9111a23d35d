//! Oriented graded posets.
//!
//! Elements are addressed positionally by `(dim, index)`. Each element stores
//! its input and output faces as indices into the grade directly below, so
//! gradedness holds by construction; cofaces are derived once at build time.
//!
//! Subsets of a poset are bitsets over a flat numbering of its elements
//! (grade by grade). [`ClosedSubset`] is the downward-closed case and is what
//! every boundary, layer and diagram in this crate is made of.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemRef {
    pub dim: usize,
    pub index: usize,
}

impl ElemRef {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for ElemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dim, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// Product of signs, `+` being the unit.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// Input and output faces of one element, as sorted indices into the grade below.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    pub faces_in: Vec<usize>,
    pub faces_out: Vec<usize>,
}

impl Element {
    pub fn new(faces_in: Vec<usize>, faces_out: Vec<usize>) -> Self {
        Self { faces_in, faces_out }
    }

    pub fn point() -> Self {
        Self::default()
    }

    pub fn faces(&self, sign: Sign) -> &[usize] {
        match sign {
            Sign::Minus => &self.faces_in,
            Sign::Plus => &self.faces_out,
        }
    }
}

#[derive(Clone)]
pub struct OgPoset {
    name: Option<String>,
    grades: Vec<Vec<Element>>,
    /// `cofaces[d][i][s]`: indices into grade `d + 1`.
    cofaces: Vec<Vec<[Vec<usize>; 2]>>,
    /// Flat numbering: element `(d, i)` has id `offsets[d] + i`.
    offsets: Vec<usize>,
}

impl PartialEq for OgPoset {
    fn eq(&self, other: &Self) -> bool {
        self.grades == other.grades
    }
}

impl Eq for OgPoset {}

impl fmt::Debug for OgPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("OgPoset");
        if let Some(name) = &self.name {
            s.field("name", name);
        }
        s.field("grades", &self.grades).finish()
    }
}

impl OgPoset {
    /// Builds a poset from per-grade face lists, validating every invariant.
    pub fn new(grades: Vec<Vec<Element>>) -> Result<Self> {
        let mut grades = grades;
        while grades.last().is_some_and(|g| g.is_empty()) {
            grades.pop();
        }
        for (d, grade) in grades.iter_mut().enumerate() {
            for (i, el) in grade.iter_mut().enumerate() {
                let here = ElemRef::new(d, i);
                if d == 0 {
                    if !el.faces_in.is_empty() || !el.faces_out.is_empty() {
                        return Err(Error::Format(format!("0-dimensional element {here} has faces")));
                    }
                    continue;
                }
                if el.faces_in.is_empty() && el.faces_out.is_empty() {
                    return Err(Error::Format(format!(
                        "element {here} of positive dimension has no faces"
                    )));
                }
                for list in [&mut el.faces_in, &mut el.faces_out] {
                    list.sort_unstable();
                    if list.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::Format(format!("duplicate face index in {here}")));
                    }
                }
                if let Some(j) = el.faces_in.iter().find(|j| el.faces_out.binary_search(j).is_ok()) {
                    return Err(Error::Format(format!(
                        "element {here} has {} as both input and output face",
                        ElemRef::new(d - 1, *j)
                    )));
                }
            }
        }
        for d in 1..grades.len() {
            let below = grades[d - 1].len();
            for (i, el) in grades[d].iter().enumerate() {
                if let Some(j) = el.faces_in.iter().chain(&el.faces_out).find(|&&j| j >= below) {
                    return Err(Error::Format(format!(
                        "element {} refers to missing face {}",
                        ElemRef::new(d, i),
                        ElemRef::new(d - 1, *j)
                    )));
                }
            }
        }
        Ok(Self::build_unchecked(None, grades))
    }

    fn build_unchecked(name: Option<String>, grades: Vec<Vec<Element>>) -> Self {
        let mut cofaces: Vec<Vec<[Vec<usize>; 2]>> =
            grades.iter().map(|g| vec![[Vec::new(), Vec::new()]; g.len()]).collect();
        for d in 1..grades.len() {
            for (i, el) in grades[d].iter().enumerate() {
                for sign in Sign::BOTH {
                    for &j in el.faces(sign) {
                        cofaces[d - 1][j][sign.slot()].push(i);
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(grades.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for g in &grades {
            acc += g.len();
            offsets.push(acc);
        }
        Self {
            name,
            grades,
            cofaces,
            offsets,
        }
    }

    pub fn empty() -> Self {
        Self::build_unchecked(None, Vec::new())
    }

    pub fn point() -> Self {
        Self::build_unchecked(None, vec![vec![Element::point()]])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn grades(&self) -> &[Vec<Element>] {
        &self.grades
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension of the poset; `-1` when empty.
    pub fn dim(&self) -> isize {
        self.grades.len() as isize - 1
    }

    pub fn grade_len(&self, dim: usize) -> usize {
        self.grades.get(dim).map_or(0, Vec::len)
    }

    pub fn element(&self, x: ElemRef) -> &Element {
        &self.grades[x.dim][x.index]
    }

    pub fn contains(&self, x: ElemRef) -> bool {
        x.dim < self.grades.len() && x.index < self.grades[x.dim].len()
    }

    pub fn check(&self, x: ElemRef) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidRef(x))
        }
    }

    pub fn id(&self, x: ElemRef) -> usize {
        self.offsets[x.dim] + x.index
    }

    pub fn elem(&self, id: usize) -> ElemRef {
        let dim = self.offsets.partition_point(|&o| o <= id) - 1;
        ElemRef::new(dim, id - self.offsets[dim])
    }

    /// All elements, ordered by `(dim, index)`.
    pub fn elements(&self) -> impl Iterator<Item = ElemRef> + '_ {
        self.grades
            .iter()
            .enumerate()
            .flat_map(|(d, g)| (0..g.len()).map(move |i| ElemRef::new(d, i)))
    }

    pub fn grade(&self, dim: usize) -> impl Iterator<Item = ElemRef> {
        (0..self.grade_len(dim)).map(move |i| ElemRef::new(dim, i))
    }

    /// Δᵅx.
    pub fn faces(&self, x: ElemRef, sign: Sign) -> impl Iterator<Item = ElemRef> + '_ {
        let below = x.dim.wrapping_sub(1);
        let list: &[usize] = if x.dim == 0 { &[] } else { self.element(x).faces(sign) };
        list.iter().map(move |&j| ElemRef::new(below, j))
    }

    /// ∇ᵅx = { y | x ∈ Δᵅy }.
    pub fn cofaces(&self, x: ElemRef, sign: Sign) -> impl Iterator<Item = ElemRef> + '_ {
        let above = x.dim + 1;
        self.cofaces[x.dim][x.index][sign.slot()]
            .iter()
            .map(move |&j| ElemRef::new(above, j))
    }

    pub fn all_faces(&self, x: ElemRef) -> impl Iterator<Item = ElemRef> + '_ {
        self.faces(x, Sign::Minus).chain(self.faces(x, Sign::Plus))
    }

    pub fn all_cofaces(&self, x: ElemRef) -> impl Iterator<Item = ElemRef> + '_ {
        self.cofaces(x, Sign::Minus).chain(self.cofaces(x, Sign::Plus))
    }

    /// Orientation of `face` relative to `x`, if it is a face at all.
    pub fn face_sign(&self, x: ElemRef, face: ElemRef) -> Option<Sign> {
        if x.dim == 0 || face.dim + 1 != x.dim {
            return None;
        }
        let el = self.element(x);
        if el.faces_in.binary_search(&face.index).is_ok() {
            Some(Sign::Minus)
        } else if el.faces_out.binary_search(&face.index).is_ok() {
            Some(Sign::Plus)
        } else {
            None
        }
    }

    // ---- subsets ----------------------------------------------------------

    pub fn empty_subset(&self) -> ClosedSubset {
        ClosedSubset(FixedBitSet::with_capacity(self.len()))
    }

    pub fn full_subset(&self) -> ClosedSubset {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        ClosedSubset(bits)
    }

    /// Smallest closed subset containing `elements`.
    pub fn closure(&self, elements: &[ElemRef]) -> Result<ClosedSubset> {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for &x in elements {
            self.check(x)?;
            bits.insert(self.id(x));
        }
        Ok(self.close_bits(bits))
    }

    /// `elements` as a closed subset, or `None` if it is not closed.
    pub fn closed_subset(&self, elements: impl IntoIterator<Item = ElemRef>) -> Option<ClosedSubset> {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in elements {
            if !self.contains(x) {
                return None;
            }
            bits.insert(self.id(x));
        }
        let closed = self.close_bits(bits.clone());
        (closed.0 == bits).then_some(closed)
    }

    /// cl{x}.
    pub fn closure_of(&self, x: ElemRef) -> ClosedSubset {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert(self.id(x));
        self.close_bits(bits)
    }

    pub(crate) fn close_bits(&self, mut bits: FixedBitSet) -> ClosedSubset {
        for d in (1..self.grades.len()).rev() {
            for i in 0..self.grades[d].len() {
                if bits.contains(self.offsets[d] + i) {
                    let el = &self.grades[d][i];
                    for &j in el.faces_in.iter().chain(&el.faces_out) {
                        bits.insert(self.offsets[d - 1] + j);
                    }
                }
            }
        }
        ClosedSubset(bits)
    }

    /// Calls `f` on every closed subset, smallest elements decided first, until
    /// `f` returns `false`. Returns whether the enumeration ran to completion.
    pub fn visit_closed_subsets(&self, f: &mut dyn FnMut(&ClosedSubset) -> bool) -> bool {
        fn go(p: &OgPoset, id: usize, bits: &mut FixedBitSet, f: &mut dyn FnMut(&ClosedSubset) -> bool) -> bool {
            if id == p.len() {
                return f(&ClosedSubset(bits.clone()));
            }
            if !go(p, id + 1, bits, f) {
                return false;
            }
            let x = p.elem(id);
            let el = p.element(x);
            let below = if x.dim == 0 { 0 } else { p.offsets[x.dim - 1] };
            if el
                .faces_in
                .iter()
                .chain(&el.faces_out)
                .all(|&j| bits.contains(below + j))
            {
                bits.insert(id);
                let keep_going = go(p, id + 1, bits, f);
                bits.set(id, false);
                return keep_going;
            }
            true
        }
        let mut bits = FixedBitSet::with_capacity(self.len());
        go(self, 0, &mut bits, f)
    }

    /// Members of `u` of dimension `n`.
    pub fn grade_of(&self, u: &ClosedSubset, n: usize) -> Vec<ElemRef> {
        self.grade(n).filter(|&x| u.contains(self, x)).collect()
    }

    /// Dimension of a subset; `-1` when empty.
    pub fn subset_dim(&self, u: &ClosedSubset) -> isize {
        u.0.ones().next_back().map_or(-1, |id| self.elem(id).dim as isize)
    }

    /// Max(U).
    pub fn maximal(&self, u: &ClosedSubset) -> Vec<ElemRef> {
        u.iter(self)
            .filter(|&x| !self.all_cofaces(x).any(|y| u.contains(self, y)))
            .collect()
    }

    /// Δₙᵅ U = { x ∈ Uₙ | ∇^{−α}x ∩ U = ∅ }.
    pub fn faces_n(&self, u: &ClosedSubset, n: usize, sign: Sign) -> Vec<ElemRef> {
        self.grade(n)
            .filter(|&x| u.contains(self, x))
            .filter(|&x| !self.cofaces(x, sign.flip()).any(|y| u.contains(self, y)))
            .collect()
    }

    /// ∂ₙᵅ U. Empty for `n < 0`.
    pub fn boundary(&self, u: &ClosedSubset, n: isize, sign: Sign) -> ClosedSubset {
        if n < 0 {
            return self.empty_subset();
        }
        let n = n as usize;
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in self.faces_n(u, n, sign) {
            bits.insert(self.id(x));
        }
        for x in self.maximal(u) {
            if x.dim < n {
                bits.insert(self.id(x));
            }
        }
        self.close_bits(bits)
    }

    /// ∂ₙU = ∂ₙ⁻U ∪ ∂ₙ⁺U.
    pub fn boundary_both(&self, u: &ClosedSubset, n: isize) -> ClosedSubset {
        self.boundary(u, n, Sign::Minus).union(&self.boundary(u, n, Sign::Plus))
    }

    /// Δₙᵅx, the `n`-dimensional part of ∂ₙᵅ(cl{x}).
    pub fn element_faces_n(&self, x: ElemRef, n: usize, sign: Sign) -> Vec<ElemRef> {
        self.faces_n(&self.closure_of(x), n, sign)
    }

    /// The closed subset as a standalone poset, with the embedding
    /// (new flat id → old element).
    pub fn restrict(&self, u: &ClosedSubset) -> (OgPoset, Vec<ElemRef>) {
        let mut new_index: Vec<Vec<Option<usize>>> = self.grades.iter().map(|g| vec![None; g.len()]).collect();
        let mut grades: Vec<Vec<Element>> = Vec::new();
        let mut embedding = Vec::with_capacity(u.len());
        for x in u.iter(self) {
            while grades.len() <= x.dim {
                grades.push(Vec::new());
            }
            new_index[x.dim][x.index] = Some(grades[x.dim].len());
            let el = self.element(x);
            let remap = |list: &[usize]| -> Vec<usize> {
                let mut v: Vec<usize> = list
                    .iter()
                    .map(|&j| new_index[x.dim - 1][j].expect("subset is closed"))
                    .collect();
                v.sort_unstable();
                v
            };
            let el = if x.dim == 0 {
                Element::point()
            } else {
                Element::new(remap(&el.faces_in), remap(&el.faces_out))
            };
            grades[x.dim].push(el);
            embedding.push(x);
        }
        (Self::build_unchecked(None, grades), embedding)
    }

    // ---- augmentation -----------------------------------------------------

    /// Adjoins a positive least element ⊥ at grade 0; every former 0-cell gets
    /// ⊥ as its unique (output) face.
    pub fn augment(&self) -> OgPoset {
        let mut grades = vec![vec![Element::point()]];
        for (d, g) in self.grades.iter().enumerate() {
            if d == 0 {
                grades.push(g.iter().map(|_| Element::new(vec![], vec![0])).collect());
            } else {
                grades.push(g.clone());
            }
        }
        Self::build_unchecked(self.name.clone(), grades)
    }

    pub fn has_positive_least_element(&self) -> bool {
        self.grade_len(0) == 1
            && self
                .grades
                .get(1)
                .is_none_or(|g| g.iter().all(|el| el.faces_in.is_empty() && el.faces_out == [0]))
    }

    /// Removes a positive least element.
    pub fn diminish(&self) -> Result<OgPoset> {
        if !self.has_positive_least_element() {
            return Err(Error::Structure("no positive least element".into()));
        }
        let mut grades: Vec<Vec<Element>> = self.grades[1..].to_vec();
        if let Some(g) = grades.first_mut() {
            for el in g {
                *el = Element::point();
            }
        }
        Ok(Self::build_unchecked(self.name.clone(), grades))
    }

    /// Whether there is a single element below every other.
    pub fn has_least_element(&self) -> bool {
        self.grade_len(0) == 1
    }

    /// Every codimension-2 interval `[x, y]` is a diamond with exactly two
    /// middle elements whose four orientation signs multiply to `-1`.
    pub fn is_oriented_thin(&self) -> bool {
        if !self.has_least_element() {
            return false;
        }
        for d in 2..self.grades.len() {
            for y in self.grade(d) {
                // bottom index -> list of (sign of middle in y, sign of bottom in middle)
                let mut intervals: std::collections::BTreeMap<usize, Vec<(Sign, Sign)>> = Default::default();
                for s1 in Sign::BOTH {
                    for z in self.faces(y, s1) {
                        for s2 in Sign::BOTH {
                            for x in self.faces(z, s2) {
                                intervals.entry(x.index).or_default().push((s1, s2));
                            }
                        }
                    }
                }
                for signs in intervals.values() {
                    if signs.len() != 2 {
                        return false;
                    }
                    let product = signs.iter().fold(Sign::Plus, |acc, (a, b)| acc.times(*a).times(*b));
                    if product != Sign::Minus {
                        return false;
                    }
                }
            }
        }
        true
    }

    // ---- serialization ----------------------------------------------------

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let grades = raw
            .elements
            .into_iter()
            .map(|g| g.into_iter().map(|f| Element::new(f.faces_in, f.out)).collect())
            .collect();
        let mut p = Self::new(grades)?;
        p.name = raw.name;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let raw = DiagramJson {
            name: self.name.clone(),
            elements: self
                .grades
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|el| FacesJson {
                            faces_in: el.faces_in.clone(),
                            out: el.faces_out.clone(),
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("diagram serialization cannot fail")
    }

    /// Breadth-first order over the undirected Hasse diagram, starting at `start`.
    pub(crate) fn hasse_bfs(&self, start: ElemRef, within: &ClosedSubset) -> Vec<ElemRef> {
        let mut seen = FixedBitSet::with_capacity(self.len());
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(self.id(start));
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let next: Vec<ElemRef> = if x.dim == 0 {
                self.all_cofaces(x).collect()
            } else {
                self.all_faces(x).chain(self.all_cofaces(x)).collect()
            };
            for y in next {
                if within.contains(self, y) && !seen.put(self.id(y)) {
                    queue.push_back(y);
                }
            }
        }
        order
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    elements: Vec<Vec<FacesJson>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacesJson {
    #[serde(rename = "in")]
    faces_in: Vec<usize>,
    out: Vec<usize>,
}

/// A downward-closed subset of some ambient [`OgPoset`].
///
/// The ambient poset is not stored; every operation takes it explicitly and
/// the caller is responsible for not mixing subsets of different posets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClosedSubset(FixedBitSet);

impl ClosedSubset {
    pub fn contains(&self, p: &OgPoset, x: ElemRef) -> bool {
        self.0.contains(p.id(x))
    }

    pub fn contains_id(&self, id: usize) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter<'a>(&'a self, p: &'a OgPoset) -> impl Iterator<Item = ElemRef> + 'a {
        self.0.ones().map(move |id| p.elem(id))
    }

    pub fn to_vec(&self, p: &OgPoset) -> Vec<ElemRef> {
        self.iter(p).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Self(bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.0.clone();
        bits.intersect_with(&other.0);
        Self(bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for ElemRefList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Display helper for element lists.
pub struct ElemRefList<'a>(pub &'a [ElemRef]);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(d: usize, i: usize) -> ElemRef {
        ElemRef::new(d, i)
    }

    #[test]
    fn closure_of_empty_is_empty() {
        let p = catalog::whiskered_globe();
        assert!(p.closure(&[]).unwrap().is_empty());
    }

    #[test]
    fn closure_of_the_two_cell_misses_the_whisker() {
        let p = catalog::whiskered_globe();
        let cl = p.closure(&[e(2, 0)]).unwrap();
        assert_eq!(cl.len(), 7);
        assert!(!cl.contains(&p, e(1, 2)));
        assert!(!cl.contains(&p, e(0, 3)));
        assert_eq!(p.full_subset().len(), 9);
    }

    #[test]
    fn closure_of_a_vertex_is_a_singleton() {
        let p = catalog::path2();
        let cl = p.closure(&[e(0, 1)]).unwrap();
        assert_eq!(cl.to_vec(&p), vec![e(0, 1)]);
    }

    #[test]
    fn closure_rejects_bad_refs() {
        let p = catalog::arrow();
        assert!(matches!(p.closure(&[e(1, 3)]), Err(Error::InvalidRef(_))));
        assert!(matches!(p.closure(&[e(5, 0)]), Err(Error::InvalidRef(_))));
    }

    #[test]
    fn faces_of_the_two_cell() {
        let p = catalog::whiskered_globe();
        let ins: Vec<_> = p.faces(e(2, 0), Sign::Minus).collect();
        assert_eq!(ins, vec![e(1, 0), e(1, 1)]);
        assert_eq!(p.faces(e(0, 2), Sign::Plus).count(), 0);
    }

    #[test]
    fn faces_and_cofaces_are_dual() {
        let p = catalog::whiskered_globe();
        for x in p.elements() {
            for y in p.elements() {
                for s in Sign::BOTH {
                    let a = p.faces(x, s).any(|z| z == y);
                    let b = p.cofaces(y, s).any(|z| z == x);
                    assert_eq!(a, b, "{x} {y} {s}");
                }
            }
        }
    }

    #[test]
    fn input_one_boundary_of_the_whiskered_globe() {
        let p = catalog::whiskered_globe();
        let b = p.boundary(&p.full_subset(), 1, Sign::Minus);
        let expected = p.closure(&[e(1, 0), e(1, 1), e(1, 2)]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_at_or_above_dimension_is_everything() {
        let p = catalog::whiskered_globe();
        let u = p.full_subset();
        for n in 2..5 {
            for s in Sign::BOTH {
                assert_eq!(p.boundary(&u, n, s), u);
            }
        }
        assert!(p.boundary(&u, -1, Sign::Plus).is_empty());
    }

    #[test]
    fn output_zero_boundary_of_the_path() {
        let p = catalog::path2();
        let b = p.boundary(&p.full_subset(), 0, Sign::Plus);
        assert_eq!(b.to_vec(&p), vec![e(0, 2)]);
    }

    #[test]
    fn augment_point_has_bottom_as_output_face() {
        let a = OgPoset::point().augment();
        assert_eq!(a.len(), 2);
        assert_eq!(a.faces(e(1, 0), Sign::Plus).collect::<Vec<_>>(), vec![e(0, 0)]);
        assert!(a.has_positive_least_element());
    }

    #[test]
    fn augment_round_trip() {
        let p = catalog::arrow();
        assert_eq!(p.augment().diminish().unwrap(), p);
        assert_eq!(catalog::path2().augment().grade_len(0), 1);
    }

    #[test]
    fn diminish_requires_positive_bottom() {
        assert!(matches!(catalog::arrow().diminish(), Err(Error::Structure(_))));
        // least element that is an input face
        let p = OgPoset::new(vec![vec![Element::point()], vec![Element::new(vec![0], vec![])]]).unwrap();
        assert!(p.diminish().is_err());
    }

    #[test]
    fn thinness() {
        assert!(catalog::whiskered_globe().augment().is_oriented_thin());
        assert!(catalog::non_acyclic_atom().augment().is_oriented_thin());
        // y with three faces over a common bottom
        let p = OgPoset::new(vec![
            vec![Element::point()],
            vec![
                Element::new(vec![], vec![0]),
                Element::new(vec![], vec![0]),
                Element::new(vec![], vec![0]),
            ],
            vec![Element::new(vec![0, 1], vec![2])],
        ])
        .unwrap();
        assert!(!p.is_oriented_thin());
        assert!(!catalog::arrow().is_oriented_thin());
    }

    #[test]
    fn json_validation() {
        assert!(OgPoset::from_json(r#"{"elements":[[{"in":[],"out":[]}]]}"#).is_ok());
        let bad = [
            r#"{"elements":[[{"in":[0],"out":[]}]]}"#,
            r#"{"elements":[[{"in":[],"out":[]}],[{"in":[0,0],"out":[]}]]}"#,
            r#"{"elements":[[{"in":[],"out":[]}],[{"in":[0],"out":[0]}]]}"#,
            r#"{"elements":[[{"in":[],"out":[]}],[{"in":[],"out":[]}]]}"#,
            r#"{"elements":[[{"in":[],"out":[]}],[{"in":[1],"out":[]}]]}"#,
            r#"{"elements":[[{"in":[],"out":[]}]], "extra": 1}"#,
            r#"{"elements":[[{"in":[]}]]}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(OgPoset::from_json(text), Err(Error::Format(_))), "{text}");
        }
    }

    #[test]
    fn json_is_stable() {
        let p = catalog::arrow().with_name("arrow");
        let text = p.to_json();
        assert_eq!(
            text,
            r#"{"name":"arrow","elements":[[{"in":[],"out":[]},{"in":[],"out":[]}],[{"in":[0],"out":[1]}]]}"#
        );
        assert_eq!(OgPoset::from_json(&text).unwrap(), p);
    }

    #[test]
    fn flat_ids_round_trip() {
        let p = catalog::whiskered_globe();
        for (id, x) in p.elements().enumerate() {
            assert_eq!(p.id(x), id);
            assert_eq!(p.elem(id), x);
        }
    }
}
