//! Seeded generators for random formulas, knowledge bases and
//! three-valued interpretations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::formula::{Atom, Formula};
use crate::kb::KnowledgeBase;
use crate::lp::{ThreeValuedInterpretation, TruthValue3};
use crate::sat::is_satisfiable;

/// Shape of generated knowledge bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KbShape {
    /// Atoms are drawn from the first `atoms` letters of `a..z`.
    pub atoms: usize,
    pub min_formulas: usize,
    pub max_formulas: usize,
    /// Leaves (atom occurrences and constants) per formula.
    pub max_leaves: usize,
    /// Reject formulas that are unsatisfiable on their own.
    pub individually_satisfiable: bool,
}

impl Default for KbShape {
    fn default() -> Self {
        KbShape {
            atoms: 6,
            min_formulas: 1,
            max_formulas: 5,
            max_leaves: 5,
            individually_satisfiable: true,
        }
    }
}

pub fn letters(n: usize) -> Vec<Atom> {
    (b'a'..=b'z')
        .take(n)
        .map(|c| Atom::new(&(c as char).to_string()).expect("letters are valid atoms"))
        .collect()
}

pub struct Generator {
    rng: StdRng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    /// A formula with exactly `leaves` leaves over `atoms`. Constants appear
    /// at a low rate.
    pub fn formula_with_leaves(&mut self, atoms: &[Atom], leaves: usize) -> Formula {
        let f = if leaves <= 1 {
            if self.rng.gen_bool(0.05) {
                if self.rng.gen_bool(0.5) {
                    Formula::Top
                } else {
                    Formula::Bottom
                }
            } else {
                Formula::atom(&atoms[self.rng.gen_range(0..atoms.len())])
            }
        } else {
            let left = self.rng.gen_range(1..leaves);
            let l = self.formula_with_leaves(atoms, left);
            let r = self.formula_with_leaves(atoms, leaves - left);
            match self.rng.gen_range(0..10) {
                0..=3 => Formula::and(l, r),
                4..=7 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            }
        };
        if self.rng.gen_bool(0.3) {
            Formula::not(f)
        } else {
            f
        }
    }

    pub fn formula(&mut self, atoms: &[Atom], max_leaves: usize) -> Formula {
        let leaves = self.rng.gen_range(1..=max_leaves.max(1));
        self.formula_with_leaves(atoms, leaves)
    }

    pub fn kb(&mut self, shape: &KbShape) -> KnowledgeBase {
        let atoms = letters(shape.atoms);
        let size = self.rng.gen_range(shape.min_formulas..=shape.max_formulas);
        let mut kb = KnowledgeBase::new();
        let mut attempts = 0;
        while kb.len() < size && attempts < 100 * size {
            attempts += 1;
            let f = self.formula(&atoms, shape.max_leaves);
            if shape.individually_satisfiable
                && !is_satisfiable(std::slice::from_ref(&f)).expect("desk-scale formula").is_sat()
            {
                continue;
            }
            kb.insert(f);
        }
        kb
    }

    /// A knowledge base whose conjunction is satisfiable.
    pub fn satisfiable_kb(&mut self, shape: &KbShape) -> KnowledgeBase {
        loop {
            let kb = self.kb(shape);
            if is_satisfiable(kb.formulas()).expect("desk-scale formula").is_sat() {
                return kb;
            }
        }
    }

    pub fn interpretation3(&mut self, atoms: &[Atom]) -> ThreeValuedInterpretation {
        atoms
            .iter()
            .map(|a| (a.clone(), TruthValue3::ALL[self.rng.gen_range(0..3)]))
            .collect()
    }
}

/// `count` knowledge bases from one seed.
pub fn corpus(seed: u64, count: usize, shape: &KbShape) -> Vec<KnowledgeBase> {
    let mut g = Generator::new(seed);
    (0..count).map(|_| g.kb(shape)).collect()
}
