//! The ω-category of molecules over a poset, at desk scale.
//!
//! A cell is a morphism from a molecule into the target poset. Two cells are
//! equal when an isomorphism of shapes commutes with the maps; since
//! isomorphisms of molecules are unique, this is decided by one search.

use std::collections::HashMap;
use std::fmt;

use crate::acyclicity::{is_acyclic, is_strongly_dw_acyclic};
use crate::error::{Error, Result};
use crate::molecule::{is_regular_directed_complex, Molecule, Node, Recognizer};
use crate::morphism::{unique_molecule_iso, OgMap};
use crate::ogposet::{ClosedSubset, ElemRef, OgPoset, Sign};

#[derive(Clone, Debug)]
pub struct Cell {
    shape: Molecule,
    map: OgMap,
}

/// Hash key that equal cells share.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    dim: usize,
    images: Vec<ElemRef>,
}

impl Cell {
    pub fn shape(&self) -> &Molecule {
        &self.shape
    }

    pub fn map(&self) -> &OgMap {
        &self.map
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }

    /// Number of maximal elements of the shape.
    pub fn width(&self) -> usize {
        let s = self.shape.poset();
        s.maximal(&s.full_subset()).len()
    }

    pub fn key(&self) -> CellKey {
        let mut images = self.map.assignment().to_vec();
        images.sort_unstable();
        CellKey {
            dim: self.dim(),
            images,
        }
    }

    /// Image of the map, as a list of elements of the target.
    pub fn image(&self) -> Vec<ElemRef> {
        let mut v = self.map.assignment().to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Composite of generating atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Atom(ElemRef),
    Compose(Box<Factorization>, Box<Factorization>, usize),
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factorization::Atom(x) => write!(f, "{x}"),
            Factorization::Compose(a, b, k) => write!(f, "({a} #{k} {b})"),
        }
    }
}

/// Result of [`MolecOver::enumerate_cells`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub cells: Vec<Cell>,
    /// Whether the cells are provably all cells of dimension at most `max_dim`.
    pub complete: bool,
    /// Whether the composition closure stopped at the cell cap.
    pub truncated: bool,
}

impl Enumeration {
    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for c in &self.cells {
            if counts.len() <= c.dim() {
                counts.resize(c.dim() + 1, 0);
            }
            counts[c.dim()] += 1;
        }
        counts
    }
}

/// Upper limit on cells produced by composition closure.
pub const CELL_CAP: usize = 20_000;

/// Molecules over a fixed target poset.
pub struct MolecOver<'a> {
    p: &'a OgPoset,
}

impl<'a> MolecOver<'a> {
    pub fn new(p: &'a OgPoset) -> Self {
        Self { p }
    }

    pub fn target(&self) -> &'a OgPoset {
        self.p
    }

    /// The inclusion of a closed subset that is a molecule.
    pub fn from_subset(&self, u: &ClosedSubset) -> Result<Cell> {
        let (poset, embedding) = self.p.restrict(u);
        Ok(Cell {
            shape: Molecule::new(poset)?,
            map: OgMap::new(embedding),
        })
    }

    /// The inclusion of `cl{x}`.
    pub fn atom(&self, x: ElemRef) -> Result<Cell> {
        self.p.check(x)?;
        self.from_subset(&self.p.closure_of(x))
    }

    /// Checks that `map` is a morphism from `shape` into the target.
    pub fn cell(&self, shape: Molecule, map: OgMap) -> Result<Cell> {
        crate::morphism::validate_morphism(shape.poset(), self.p, &map)
            .map_err(|v| Error::Structure(format!("not a morphism: {v}")))?;
        Ok(Cell { shape, map })
    }

    /// The restriction of `c` to the boundary ∂ₖᵅ of its shape.
    pub fn boundary(&self, c: &Cell, k: isize, sign: Sign) -> Cell {
        if k >= c.dim() as isize {
            return c.clone();
        }
        let s = c.shape.poset();
        let b = s.boundary(&s.full_subset(), k, sign);
        let (poset, embedding) = s.restrict(&b);
        let map = OgMap::new(embedding.iter().map(|&x| c.map.apply(s, x)).collect());
        let shape = Molecule::new(poset).expect("boundaries of molecules are molecules");
        Cell { shape, map }
    }

    pub fn equal(&self, a: &Cell, b: &Cell) -> bool {
        if a.dim() != b.dim() || a.shape.poset().len() != b.shape.poset().len() || a.key() != b.key() {
            return false;
        }
        let (sa, sb) = (a.shape.poset(), b.shape.poset());
        match unique_molecule_iso(sa, sb).expect("shapes are molecules") {
            None => false,
            Some(phi) => sa
                .elements()
                .all(|x| a.map.apply(sa, x) == b.map.apply(sb, phi.apply(sa, x))),
        }
    }

    /// `a ∘ₖ b`, defined when ∂ₖ⁺a = ∂ₖ⁻b.
    pub fn compose(&self, a: &Cell, b: &Cell, k: usize) -> Result<Cell> {
        let (out, inp) = (
            self.boundary(a, k as isize, Sign::Plus),
            self.boundary(b, k as isize, Sign::Minus),
        );
        if !self.equal(&out, &inp) {
            return Err(Error::Composition(format!("cells are not {k}-composable")));
        }
        if a.dim() <= k {
            return Ok(b.clone());
        }
        if b.dim() <= k {
            return Ok(a.clone());
        }
        let (shape, ia, ib) = a.shape.paste_with_inclusions(&b.shape, k)?;
        let w = shape.poset();
        let mut assignment: Vec<Option<ElemRef>> = vec![None; w.len()];
        for (cell, incl) in [(a, &ia), (b, &ib)] {
            let s = cell.shape.poset();
            for x in s.elements() {
                let slot = &mut assignment[w.id(incl.apply(s, x))];
                let y = cell.map.apply(s, x);
                if slot.is_some_and(|z| z != y) {
                    return Err(Error::Composition("maps disagree on the glued boundary".into()));
                }
                *slot = Some(y);
            }
        }
        let map = OgMap::new(
            assignment
                .into_iter()
                .map(|y| y.expect("inclusions cover the pasting"))
                .collect(),
        );
        Ok(Cell { shape, map })
    }

    /// `cl{x} ↪ P` for every `x`.
    pub fn generating_atoms(&self) -> Result<Vec<Cell>> {
        self.p.elements().map(|x| self.atom(x)).collect()
    }

    /// Whether the subset cells are all the cells: the target is acyclic, or
    /// a strongly dimension-wise acyclic regular directed complex.
    pub fn subsets_suffice(&self) -> bool {
        is_acyclic(self.p) || (is_regular_directed_complex(self.p) && is_strongly_dw_acyclic(self.p))
    }

    /// Cells of dimension at most `max_dim`.
    ///
    /// Subset cells come first. When they are not known to be all cells and
    /// `bound > 0`, the list is closed under composition of cells with at
    /// most `bound` maximal elements in their shape; `complete` stays false.
    pub fn enumerate_cells(&self, max_dim: usize, bound: usize) -> Enumeration {
        let mut rec = Recognizer::new(self.p);
        let mut subsets = Vec::new();
        self.p.visit_closed_subsets(&mut |u| {
            if self.p.subset_dim(u) <= max_dim as isize && rec.is_molecule(u) {
                subsets.push(u.clone());
            }
            true
        });
        subsets.sort_by_key(|u| (self.p.subset_dim(u), u.len(), u.to_vec(self.p)));
        let cells: Vec<Cell> = subsets
            .iter()
            .map(|u| self.from_subset(u).expect("recognized molecule"))
            .collect();
        let complete = self.subsets_suffice();
        if complete || bound == 0 {
            return Enumeration {
                cells,
                complete,
                truncated: false,
            };
        }
        let (cells, truncated) = self.close_under_composition(cells, bound);
        Enumeration {
            cells,
            complete: false,
            truncated,
        }
    }

    fn close_under_composition(&self, mut cells: Vec<Cell>, bound: usize) -> (Vec<Cell>, bool) {
        let mut index: HashMap<CellKey, Vec<usize>> = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            index.entry(c.key()).or_default().push(i);
        }
        // boundaries[i][k] = (∂ₖ⁻, ∂ₖ⁺) keys and cells
        let mut boundaries: Vec<Vec<[Cell; 2]>> = Vec::new();
        let mut done = 0;
        loop {
            while boundaries.len() < cells.len() {
                let c = &cells[boundaries.len()];
                boundaries.push(
                    (0..c.dim())
                        .map(|k| Sign::BOTH.map(|s| self.boundary(c, k as isize, s)))
                        .collect(),
                );
            }
            let n = cells.len();
            if done == n {
                return (cells, false);
            }
            let mut fresh = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i < done && j < done {
                        continue;
                    }
                    let (a, b) = (&cells[i], &cells[j]);
                    for (k, (bi, bj)) in boundaries[i].iter().zip(&boundaries[j]).enumerate() {
                        let (out, inp) = (&bi[1], &bj[0]);
                        if out.key() != inp.key() || !self.equal(out, inp) {
                            continue;
                        }
                        let Ok(c) = self.compose(a, b, k) else { continue };
                        if c.width() > bound {
                            continue;
                        }
                        let key = c.key();
                        let seen = index.get(&key).is_some_and(|ids| {
                            ids.iter().any(|&id| {
                                let other = if id < n { &cells[id] } else { &fresh[id - n] };
                                self.equal(other, &c)
                            })
                        });
                        if !seen {
                            index.entry(key).or_default().push(n + fresh.len());
                            fresh.push(c);
                            if n + fresh.len() >= CELL_CAP {
                                cells.extend(fresh);
                                return (cells, true);
                            }
                        }
                    }
                }
            }
            done = n;
            cells.extend(fresh);
        }
    }

    /// A factorization of `c` into generating atoms, read off a
    /// decomposition of its shape.
    pub fn factorize(&self, c: &Cell) -> Option<Factorization> {
        let s = c.shape.poset();
        let mut rec = Recognizer::new(s);
        let d = rec.decompose(&s.full_subset())?;
        fn go(s: &OgPoset, map: &OgMap, d: &crate::molecule::Decomp) -> Factorization {
            match &d.node {
                Node::Point | Node::Atom { .. } => {
                    let top = s.maximal(&d.subset)[0];
                    Factorization::Atom(map.apply(s, top))
                }
                Node::Paste { left, right, k } => {
                    Factorization::Compose(Box::new(go(s, map, left)), Box::new(go(s, map, right)), *k)
                }
            }
        }
        Some(go(s, &c.map, &d))
    }

    /// Evaluates a factorization by composing generating atoms.
    pub fn evaluate(&self, f: &Factorization) -> Result<Cell> {
        match f {
            Factorization::Atom(x) => self.atom(*x),
            Factorization::Compose(a, b, k) => self.compose(&self.evaluate(a)?, &self.evaluate(b)?, *k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(d: usize, i: usize) -> ElemRef {
        ElemRef::new(d, i)
    }

    #[test]
    fn cell_counts() {
        for (p, n) in [(catalog::arrow(), 3), (catalog::path2(), 6)] {
            let m = MolecOver::new(&p);
            let en = m.enumerate_cells(p.dim() as usize, 0);
            assert!(en.complete);
            assert_eq!(en.cells.len(), n);
        }
    }

    #[test]
    fn loop_graph_paths() {
        let p = catalog::loop_graph();
        let m = MolecOver::new(&p);
        let base = m.enumerate_cells(1, 0);
        assert!(!base.complete);
        assert_eq!(base.cells.len(), 5);
        // Paths of length 1, 2, 3 in a graph with edges a→b, b⇉a: 3 + 4 + 6.
        let en = m.enumerate_cells(1, 3);
        assert!(!en.complete && !en.truncated);
        assert_eq!(en.count_by_dim(), vec![2, 13]);
        assert!(en.cells.iter().filter(|c| c.width() > 1).all(|c| !c.is_injective()));
    }

    #[test]
    fn boundaries_and_units() {
        let p = catalog::whiskered_globe();
        let m = MolecOver::new(&p);
        let whole = m.from_subset(&p.full_subset()).unwrap();
        let src = m.boundary(&whole, 0, Sign::Minus);
        assert_eq!(src.dim(), 0);
        assert!(m.equal(&m.boundary(&whole, 2, Sign::Plus), &whole));
        for k in 0..2 {
            let out = m.boundary(&whole, k as isize, Sign::Plus);
            assert!(m.equal(&m.compose(&whole, &out, k).unwrap(), &whole));
            let inp = m.boundary(&whole, k as isize, Sign::Minus);
            assert!(m.equal(&m.compose(&inp, &whole, k).unwrap(), &whole));
        }
    }

    #[test]
    fn non_composable_cells_are_rejected() {
        let p = catalog::path2();
        let m = MolecOver::new(&p);
        let (f, g) = (m.atom(e(1, 0)).unwrap(), m.atom(e(1, 1)).unwrap());
        assert!(m.compose(&f, &g, 0).is_ok());
        assert!(matches!(m.compose(&g, &f, 0), Err(Error::Composition(_))));
    }

    #[test]
    fn factorizations_rebuild_cells() {
        let p = catalog::two_globes();
        let m = MolecOver::new(&p);
        for c in m.enumerate_cells(2, 0).cells {
            let f = m.factorize(&c).unwrap();
            assert!(m.equal(&m.evaluate(&f).unwrap(), &c), "{f}");
        }
    }
}
