//! Augmented directed chain complexes, globular tables and the comparison
//! between cells over a poset and tables in its linearization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::molecule::Recognizer;
use crate::ogposet::{ClosedSubset, ElemRef, OgPoset, Sign};
use crate::omega::{Cell, MolecOver, CELL_CAP};

/// A finitely supported integer combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(BTreeMap<ElemRef, i64>);

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: ElemRef) -> Self {
        Self::from_terms([(x, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ElemRef, i64)>) -> Self {
        let mut c = Self::zero();
        for (x, a) in terms {
            c.add_term(x, a);
        }
        c
    }

    /// Sum of the given elements, with multiplicity.
    pub fn sum_of(xs: impl IntoIterator<Item = ElemRef>) -> Self {
        Self::from_terms(xs.into_iter().map(|x| (x, 1)))
    }

    pub fn add_term(&mut self, x: ElemRef, a: i64) {
        let entry = self.0.entry(x).or_insert(0);
        *entry += a;
        if *entry == 0 {
            self.0.remove(&x);
        }
    }

    pub fn coeff(&self, x: ElemRef) -> i64 {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemRef, i64)> + '_ {
        self.0.iter().map(|(&x, &a)| (x, a))
    }

    pub fn support(&self) -> Vec<ElemRef> {
        self.0.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&a| a > 0)
    }

    pub fn positive_part(&self) -> Self {
        Self(self.0.iter().filter(|(_, &a)| a > 0).map(|(&x, &a)| (x, a)).collect())
    }

    /// The chain `x⁻ ≥ 0` with `x = x⁺ - x⁻`.
    pub fn negative_part(&self) -> Self {
        Self(self.0.iter().filter(|(_, &a)| a < 0).map(|(&x, &a)| (x, -a)).collect())
    }

    pub fn part(&self, sign: Sign) -> Self {
        match sign {
            Sign::Minus => self.negative_part(),
            Sign::Plus => self.positive_part(),
        }
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, other: &Chain) -> Chain {
        let mut c = self.clone();
        for (x, a) in other.terms() {
            c.add_term(x, a);
        }
        c
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, other: &Chain) -> Chain {
        self + &(-other)
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        Chain(self.0.iter().map(|(&x, &a)| (x, -a)).collect())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (x, a)) in self.terms().enumerate() {
            let sign = if a < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let gap = if i > 0 { " " } else { "" };
            match a.abs() {
                1 => write!(f, "{gap}{sign}{gap}{x}")?,
                n => write!(f, "{gap}{sign}{gap}{n}{x}")?,
            }
        }
        Ok(())
    }
}

/// An augmented chain complex of free abelian groups with a chosen basis,
/// directed by the nonnegative combinations of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adc {
    basis: Vec<usize>,
    boundary: Vec<Vec<Chain>>,
    augmentation: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdcJson {
    basis: Vec<usize>,
    boundary: Vec<Vec<Vec<i64>>>,
    augmentation: Vec<i64>,
}

impl Adc {
    /// From the boundary of each basis element; `boundary[0]` must be empty chains.
    pub fn new(basis: Vec<usize>, boundary: Vec<Vec<Chain>>, augmentation: Vec<i64>) -> Result<Self> {
        if boundary.len() != basis.len() || boundary.iter().zip(&basis).any(|(b, &n)| b.len() != n) {
            return Err(Error::Format("boundary does not match basis sizes".into()));
        }
        if augmentation.len() != basis.first().copied().unwrap_or(0) {
            return Err(Error::Format("augmentation does not match the 0-basis".into()));
        }
        for (n, col) in boundary.iter().enumerate() {
            for c in col {
                let ok = c
                    .terms()
                    .all(|(x, _)| n > 0 && x.dim == n - 1 && x.index < basis[n - 1]);
                if !ok {
                    return Err(Error::Format(format!("boundary in degree {n} leaves the degree below")));
                }
            }
        }
        Ok(Self {
            basis,
            boundary,
            augmentation,
        })
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Largest degree with a basis element, or -1.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = ElemRef> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(n, &len)| (0..len).map(move |i| ElemRef::new(n, i)))
    }

    pub fn d_basis(&self, b: ElemRef) -> &Chain {
        &self.boundary[b.dim][b.index]
    }

    pub fn d(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (x, a) in c.terms() {
            for (y, b) in self.d_basis(x).terms() {
                out.add_term(y, a * b);
            }
        }
        out
    }

    /// ε on the degree-0 part of `c`.
    pub fn eps(&self, c: &Chain) -> i64 {
        c.terms()
            .filter(|(x, _)| x.dim == 0)
            .map(|(x, a)| a * self.augmentation[x.index])
            .sum()
    }

    /// ∂∂ = 0 on every basis element.
    pub fn dd_is_zero(&self) -> bool {
        self.basis_elements().all(|b| self.d(self.d_basis(b)).is_zero())
    }

    /// ε∂ = 0 on every basis element of degree 1.
    pub fn eps_d_is_zero(&self) -> bool {
        self.basis_elements()
            .filter(|b| b.dim == 1)
            .all(|b| self.eps(self.d_basis(b)) == 0)
    }

    pub fn to_json(&self) -> String {
        let boundary = (1..self.basis.len())
            .map(|n| {
                (0..self.basis[n - 1])
                    .map(|r| {
                        (0..self.basis[n])
                            .map(|c| self.boundary[n][c].coeff(ElemRef::new(n - 1, r)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let json = AdcJson {
            basis: self.basis.clone(),
            boundary,
            augmentation: self.augmentation.clone(),
        };
        serde_json::to_string(&json).expect("chain complex serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: AdcJson = serde_json::from_str(text)?;
        if json.boundary.len() + 1 != json.basis.len().max(1) {
            return Err(Error::Format("one boundary matrix per positive degree expected".into()));
        }
        let mut boundary: Vec<Vec<Chain>> = json
            .basis
            .first()
            .map(|&n| vec![Chain::zero(); n])
            .into_iter()
            .collect();
        for (m, matrix) in json.boundary.iter().enumerate() {
            let n = m + 1;
            if matrix.len() != json.basis[n - 1] || matrix.iter().any(|row| row.len() != json.basis[n]) {
                return Err(Error::Format(format!("boundary matrix {n} has the wrong shape")));
            }
            boundary.push(
                (0..json.basis[n])
                    .map(|c| Chain::from_terms((0..json.basis[n - 1]).map(|r| (ElemRef::new(n - 1, r), matrix[r][c]))))
                    .collect(),
            );
        }
        Self::new(json.basis, boundary, json.augmentation)
    }
}

/// ℤP: basis Pₙ in degree n, ∂x = ΣΔ⁺x − ΣΔ⁻x and εx = 1.
pub fn linearize(p: &OgPoset) -> Result<Adc> {
    if !p.augment().is_oriented_thin() {
        return Err(Error::Structure("the augmentation is not oriented thin".into()));
    }
    let basis: Vec<usize> = (0..p.grades().len()).map(|n| p.grade_len(n)).collect();
    let boundary = (0..basis.len())
        .map(|n| {
            p.grade(n)
                .map(|x| &Chain::sum_of(p.faces(x, Sign::Plus)) - &Chain::sum_of(p.faces(x, Sign::Minus)))
                .collect()
        })
        .collect();
    Adc::new(basis, boundary, vec![1; p.grade_len(0)])
}

/// A double sequence `(xₙᵅ)`, stored up to its last nonzero row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobularTable {
    rows: Vec<[Chain; 2]>,
}

fn slot(sign: Sign) -> usize {
    match sign {
        Sign::Minus => 0,
        Sign::Plus => 1,
    }
}

impl GlobularTable {
    pub fn from_rows(rows: Vec<[Chain; 2]>) -> Self {
        let mut t = Self { rows };
        while t.rows.last().is_some_and(|r| r[0].is_zero() && r[1].is_zero()) {
            t.rows.pop();
        }
        t
    }

    pub fn get(&self, n: usize, sign: Sign) -> Chain {
        self.rows.get(n).map(|r| r[slot(sign)].clone()).unwrap_or_default()
    }

    /// Largest `n` with a nonzero row, or -1.
    pub fn dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let row = |c: &Chain| {
            c.terms()
                .map(|(x, a)| serde_json::json!([x.dim, x.index, a]))
                .collect::<Vec<_>>()
        };
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|r| serde_json::json!({"-": row(&r[0]), "+": row(&r[1])}))
                .collect(),
        )
    }
}

impl fmt::Display for GlobularTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, r) in self.rows.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{n}: {} | {}", r[0], r[1])?;
        }
        Ok(())
    }
}

/// The table ⟨b⟩, by downward recursion from `b`.
pub fn basis_table(c: &Adc, b: ElemRef) -> GlobularTable {
    let mut rows = vec![[Chain::zero(), Chain::zero()]; b.dim + 1];
    rows[b.dim] = [Chain::basis(b), Chain::basis(b)];
    for m in (0..b.dim).rev() {
        for s in Sign::BOTH {
            rows[m][slot(s)] = c.d(&rows[m + 1][slot(s)]).part(s);
        }
    }
    GlobularTable::from_rows(rows)
}

/// ε⟨b⟩₀ᵅ = 1 for every basis element and sign.
pub fn is_unital_basis(c: &Adc) -> bool {
    c.basis_elements().all(|b| {
        let t = basis_table(c, b);
        Sign::BOTH.iter().all(|&s| c.eps(&t.get(0, s)) == 1)
    })
}

pub fn is_globular_table(c: &Adc, x: &GlobularTable) -> bool {
    let in_range = |ch: &Chain, n: usize| {
        ch.terms()
            .all(|(y, _)| y.dim == n && n < c.basis.len() && y.index < c.basis[n])
    };
    for n in 0..x.rows.len() {
        for s in Sign::BOTH {
            let xn = x.get(n, s);
            if !xn.is_nonnegative() || !in_range(&xn, n) {
                return false;
            }
            if n > 0 && c.d(&xn) != &x.get(n - 1, Sign::Plus) - &x.get(n - 1, Sign::Minus) {
                return false;
            }
        }
    }
    Sign::BOTH.iter().all(|&s| c.eps(&x.get(0, s)) == 1)
}

/// ∂ₙᵅx: rows below `n` kept, row `n` set to `xₙᵅ` on both sides, rows above zero.
pub fn nu_boundary(x: &GlobularTable, n: usize, sign: Sign) -> GlobularTable {
    if n as isize >= x.dim() {
        return x.clone();
    }
    let mut rows: Vec<[Chain; 2]> = x.rows[..n].to_vec();
    let top = x.get(n, sign);
    rows.push([top.clone(), top]);
    GlobularTable::from_rows(rows)
}

/// `x ∘ₖ y`, defined when ∂ₖ⁺x = ∂ₖ⁻y.
pub fn nu_compose(x: &GlobularTable, y: &GlobularTable, k: usize) -> Result<GlobularTable> {
    let bx = nu_boundary(x, k, Sign::Plus);
    if bx != nu_boundary(y, k, Sign::Minus) {
        return Err(Error::Composition(format!("tables are not {k}-composable")));
    }
    let len = x.rows.len().max(y.rows.len());
    let rows = (0..len)
        .map(|n| Sign::BOTH.map(|s| &(&x.get(n, s) - &bx.get(n, s)) + &y.get(n, s)))
        .collect();
    Ok(GlobularTable::from_rows(rows))
}

/// Flowₖ of a complex with basis: `b -> c` when supp⟨b⟩ₖ⁺ meets supp⟨c⟩ₖ⁻.
pub fn adc_flow_graph(c: &Adc, k: usize) -> DirectedGraph {
    let tables: Vec<(ElemRef, Vec<ElemRef>, Vec<ElemRef>)> = c
        .basis_elements()
        .filter(|b| b.dim > k)
        .map(|b| {
            let t = basis_table(c, b);
            (b, t.get(k, Sign::Minus).support(), t.get(k, Sign::Plus).support())
        })
        .collect();
    let mut g = DirectedGraph::from_parts(tables.iter().map(|t| t.0), []);
    for (b, _, plus) in &tables {
        for (d, minus, _) in &tables {
            if plus.iter().any(|z| minus.contains(z)) {
                g.add_edge(*b, *d);
            }
        }
    }
    g
}

/// `b -> c` when `b ∈ supp (∂c)⁻` or `c ∈ supp (∂b)⁺`.
pub fn adc_hasse(c: &Adc) -> DirectedGraph {
    let mut g = DirectedGraph::from_parts(c.basis_elements(), []);
    for x in c.basis_elements() {
        let d = c.d_basis(x);
        for y in d.negative_part().support() {
            g.add_edge(y, x);
        }
        for y in d.positive_part().support() {
            g.add_edge(x, y);
        }
    }
    g
}

pub fn is_steiner(c: &Adc) -> bool {
    is_unital_basis(c) && (0..c.basis.len()).all(|k| adc_flow_graph(c, k).is_acyclic())
}

pub fn is_strong_steiner(c: &Adc) -> bool {
    is_unital_basis(c) && adc_hasse(c).is_acyclic()
}

/// xₙᵅ = Σ of the n-dimensional elements of ∂ₙᵅU.
pub fn molecule_table(p: &OgPoset, u: &ClosedSubset) -> Result<GlobularTable> {
    if !Recognizer::new(p).is_molecule(u) {
        return Err(Error::NotAMolecule);
    }
    let dim = p.subset_dim(u) as usize;
    let rows = (0..=dim)
        .map(|n| Sign::BOTH.map(|s| Chain::sum_of(p.grade_of(&p.boundary(u, n as isize, s), n))))
        .collect();
    Ok(GlobularTable::from_rows(rows))
}

/// The table of a cell: the image of its shape's table under the map.
pub fn cell_table(c: &Cell) -> GlobularTable {
    let s = c.shape().poset();
    let u = s.full_subset();
    let rows = (0..=c.dim())
        .map(|n| {
            Sign::BOTH.map(|sign| {
                Chain::sum_of(
                    s.grade_of(&s.boundary(&u, n as isize, sign), n)
                        .into_iter()
                        .map(|y| c.map().apply(s, y)),
                )
            })
        })
        .collect();
    GlobularTable::from_rows(rows)
}

/// Outcome of comparing cells over `P` with globular tables in ℤP.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuComparison {
    pub cells: usize,
    /// Distinct tables among the images of cells.
    pub images: usize,
    /// Tables generated from the ⟨x⟩ by composition, when computed.
    pub generated: Option<usize>,
    /// The cell enumeration is known to be exhaustive.
    pub complete: bool,
    pub injective: bool,
    pub surjective: Option<bool>,
    pub boundaries_commute: bool,
    pub compositions_commute: bool,
    /// Factorizations of two distinct cells with the same table.
    pub collision: Option<[String; 2]>,
    pub isomorphic: bool,
}

impl NuComparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Closure of the ⟨x⟩ of dimension at most `max_dim` under composition;
/// `None` if it exceeds the cap.
pub fn generated_tables(c: &Adc, max_dim: usize) -> Option<Vec<GlobularTable>> {
    let mut tables: Vec<GlobularTable> = c
        .basis_elements()
        .filter(|b| b.dim <= max_dim)
        .map(|b| basis_table(c, b))
        .collect();
    tables.sort();
    tables.dedup();
    let mut seen: std::collections::HashSet<GlobularTable> = tables.iter().cloned().collect();
    let mut done = 0;
    while done < tables.len() {
        let n = tables.len();
        let mut fresh = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                let (x, y) = (&tables[i], &tables[j]);
                for k in 0..x.dim().min(y.dim()).max(0) as usize {
                    if let Ok(z) = nu_compose(x, y, k) {
                        if seen.insert(z.clone()) {
                            fresh.push(z);
                        }
                    }
                }
            }
        }
        done = n;
        tables.extend(fresh);
        if tables.len() > CELL_CAP {
            return None;
        }
    }
    tables.sort();
    Some(tables)
}

/// Compares the cells over `p` of dimension at most `max_dim` with tables in ℤP.
///
/// When the cells are not known to be exhaustive, composites whose shape has
/// at most `bound` maximal elements are included and surjectivity is not
/// decided.
pub fn compare_molec_nu(p: &OgPoset, max_dim: usize, bound: usize) -> Result<NuComparison> {
    let c = linearize(p)?;
    let m = MolecOver::new(p);
    let en = m.enumerate_cells(max_dim, bound);
    let tables: Vec<GlobularTable> = en.cells.iter().map(cell_table).collect();
    let mut first: HashMap<&GlobularTable, usize> = HashMap::new();
    let mut collision = None;
    for (i, t) in tables.iter().enumerate() {
        if let Some(&j) = first.get(t) {
            if collision.is_none() {
                let name = |i: usize| m.factorize(&en.cells[i]).map(|f| f.to_string()).unwrap_or_default();
                collision = Some([name(j), name(i)]);
            }
        } else {
            first.insert(t, i);
        }
    }
    let images = first.len();
    let injective = collision.is_none();
    let boundaries_commute = en.cells.iter().zip(&tables).all(|(cell, t)| {
        (0..cell.dim()).all(|n| {
            Sign::BOTH
                .iter()
                .all(|&s| cell_table(&m.boundary(cell, n as isize, s)) == nu_boundary(t, n, s))
        })
    });
    let mut compositions_commute = true;
    for (a, ta) in en.cells.iter().zip(&tables) {
        for (b, tb) in en.cells.iter().zip(&tables) {
            for k in 0..a.dim().min(b.dim()) {
                if let Ok(ab) = m.compose(a, b, k) {
                    if nu_compose(ta, tb, k).ok().as_ref() != Some(&cell_table(&ab)) {
                        compositions_commute = false;
                    }
                }
            }
        }
    }
    let generated = if en.complete {
        generated_tables(&c, max_dim)
    } else {
        None
    };
    let surjective = generated.as_ref().map(|g| g.iter().all(|t| first.contains_key(t)));
    let isomorphic = en.complete && injective && surjective == Some(true) && boundaries_commute && compositions_commute;
    Ok(NuComparison {
        cells: en.cells.len(),
        images,
        generated: generated.map(|g| g.len()),
        complete: en.complete,
        injective,
        surjective,
        boundaries_commute,
        compositions_commute,
        collision,
        isomorphic,
    })
}
