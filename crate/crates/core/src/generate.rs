//! Random molecules for property tests.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::constructions::{dual, gray, join, suspension};
use crate::molecule::Molecule;
use crate::morphism::are_isomorphic;
use crate::ogposet::{OgPoset, Sign};

/// Limits on generated molecules.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_dim: usize,
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_dim: 3,
            max_elements: 30,
        }
    }
}

/// Grows a pool of pairwise non-isomorphic molecules by random applications
/// of pasting, rewriting, suspension, Gray product, join and duals.
pub struct Generator {
    rng: StdRng,
    limits: Limits,
    pool: Vec<Molecule>,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Paste,
    Atom,
    Suspend,
    Gray,
    Join,
    Dual,
}

const STEPS: [Step; 6] = [
    Step::Paste,
    Step::Atom,
    Step::Suspend,
    Step::Gray,
    Step::Join,
    Step::Dual,
];

impl Generator {
    pub fn new(seed: u64, limits: Limits) -> Self {
        Self {
            rng: StdRng::seed_from_u64(seed),
            limits,
            pool: vec![Molecule::point()],
        }
    }

    pub fn pool(&self) -> &[Molecule] {
        &self.pool
    }

    pub fn into_pool(self) -> Vec<Molecule> {
        self.pool
    }

    /// Grows the pool to `n` molecules, giving up after `max_attempts` steps.
    pub fn grow(&mut self, n: usize, max_attempts: usize) -> &[Molecule] {
        for _ in 0..max_attempts {
            if self.pool.len() >= n {
                break;
            }
            if let Some(m) = self.step() {
                self.offer(m);
            }
        }
        &self.pool
    }

    fn offer(&mut self, m: Molecule) {
        let p = m.poset();
        if p.dim() > self.limits.max_dim as isize || p.len() > self.limits.max_elements {
            return;
        }
        let sizes = |q: &OgPoset| (0..q.grades().len()).map(|d| q.grade_len(d)).collect::<Vec<_>>();
        let known = self
            .pool
            .iter()
            .any(|other| sizes(other.poset()) == sizes(p) && are_isomorphic(other.poset(), p));
        if !known {
            self.pool.push(m);
        }
    }

    /// The smaller of two random pool members.
    fn pick(&mut self) -> Molecule {
        let a = self.pool.choose(&mut self.rng).expect("the pool is never empty");
        let b = self.pool.choose(&mut self.rng).expect("the pool is never empty");
        if b.poset().len() < a.poset().len() {
            b.clone()
        } else {
            a.clone()
        }
    }

    fn step(&mut self) -> Option<Molecule> {
        let step = *STEPS.choose(&mut self.rng).expect("nonempty");
        let a = self.pick();
        let Limits { max_dim, max_elements } = self.limits;
        let fits = |dim: usize, len: usize| dim <= max_dim && len <= max_elements;
        match step {
            Step::Paste => {
                let b = self.pick();
                let bound = a.dim().min(b.dim());
                if bound == 0 {
                    return None;
                }
                let k = self.rng.gen_range(0..bound);
                if !fits(a.dim().max(b.dim()), a.poset().len() + b.poset().len()) {
                    return None;
                }
                match a.paste(&b, k) {
                    Ok(m) => Some(m),
                    // Paste onto a globe over the matching boundary instead.
                    Err(_) => {
                        let c = a.boundary(k as isize, Sign::Plus).ok()?;
                        if c.dim() != k || !c.is_round() {
                            return None;
                        }
                        let globe = Molecule::atom(&c, &c).ok()?;
                        a.paste(&globe, k).ok()
                    }
                }
            }
            Step::Atom => {
                if !a.is_round() {
                    return None;
                }
                let b = self.pick();
                if b.dim() == a.dim() && b.is_round() {
                    if let Ok(m) = Molecule::atom(&a, &b) {
                        return Some(m);
                    }
                }
                Molecule::atom(&a, &a).ok()
            }
            Step::Suspend => {
                if !fits(a.dim() + 1, a.poset().len() + 2) {
                    return None;
                }
                Molecule::new(suspension(a.poset())).ok()
            }
            Step::Gray => {
                let b = self.pick();
                if !fits(a.dim() + b.dim(), a.poset().len() * b.poset().len()) {
                    return None;
                }
                Molecule::new(gray(a.poset(), b.poset()).poset).ok()
            }
            Step::Join => {
                let b = self.pick();
                if !fits(a.dim() + b.dim() + 1, (a.poset().len() + 1) * (b.poset().len() + 1) - 1) {
                    return None;
                }
                Molecule::new(join(a.poset(), b.poset()).poset).ok()
            }
            Step::Dual => {
                let dims: BTreeSet<usize> = (1..=a.dim()).filter(|_| self.rng.gen_bool(0.5)).collect();
                Molecule::new(dual(a.poset(), &dims)).ok()
            }
        }
    }
}

/// `n` pairwise non-isomorphic molecules within `limits`, reproducibly from `seed`.
pub fn random_molecules(seed: u64, n: usize, limits: Limits) -> Vec<Molecule> {
    let mut g = Generator::new(seed, limits);
    g.grow(n, n * 200);
    g.into_pool()
}
