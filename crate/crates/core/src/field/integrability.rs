use rand::Rng;
use rayon::prelude::*;

use super::FieldGC;
use crate::cartan::Section;
use crate::exact::random_polynomial;

/// Outcome of the random-section spot check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSectionCheck {
    pub pairs: usize,
    /// Pairs on which the Courant–Nijenhuis tensor was nonzero.
    pub nonzero: usize,
}

/// Frame-pair verdict next to the random-pair verdict; neither is trusted
/// over the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub frame_pairs_vanish: bool,
    pub random: RandomSectionCheck,
}

impl IntegrabilityReport {
    pub fn random_pairs_vanish(&self) -> bool {
        self.random.nonzero == 0
    }

    pub fn agree(&self) -> bool {
        self.frame_pairs_vanish == self.random_pairs_vanish()
    }
}

impl FieldGC {
    /// `𝒩(A,B) = ⟦𝒥A,𝒥B⟧ − 𝒥⟦𝒥A,B⟧ − 𝒥⟦A,𝒥B⟧ − ⟦A,B⟧`.
    pub fn nijenhuis(&self, a: &Section, b: &Section) -> Section {
        let ja = self.apply(a);
        let jb = self.apply(b);
        ja.courant(&jb).sub(&self.apply(&ja.courant(b))).sub(&self.apply(&a.courant(&jb))).sub(&a.courant(b))
    }

    /// Frame pairs `(i, j)`, `i < j`, with nonzero tensor.
    pub fn nijenhuis_failures(&self) -> Vec<(usize, usize)> {
        let m = 2 * self.d;
        let frames: Vec<Section> = (0..m).map(|k| Section::frame(&self.vars, self.d, k)).collect();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        let mut bad: Vec<(usize, usize)> =
            pairs.into_par_iter().filter(|&(i, j)| !self.nijenhuis(&frames[i], &frames[j]).is_zero()).collect();
        bad.sort();
        bad
    }

    /// Whether the tensor vanishes on all pairs of coordinate frame sections.
    pub fn nijenhuis_check(&self) -> bool {
        self.nijenhuis_failures().is_empty()
    }

    /// A random real section with coefficients of degree `≤ degree` in the
    /// coordinates and small integer coefficients.
    pub fn random_section(&self, rng: &mut impl Rng, degree: u32) -> Section {
        let comps = (0..2 * self.d).map(|_| random_polynomial(rng, &self.vars, self.d, degree)).collect();
        Section::from_column(&self.vars, comps)
    }

    /// Evaluates the tensor on `pairs` random section pairs.
    pub fn nijenhuis_random_check(&self, rng: &mut impl Rng, pairs: usize, degree: u32) -> RandomSectionCheck {
        let sections: Vec<(Section, Section)> =
            (0..pairs).map(|_| (self.random_section(rng, degree), self.random_section(rng, degree))).collect();
        let nonzero = sections.par_iter().filter(|(a, b)| !self.nijenhuis(a, b).is_zero()).count();
        RandomSectionCheck { pairs, nonzero }
    }

    pub fn integrability(&self, rng: &mut impl Rng, pairs: usize, degree: u32) -> IntegrabilityReport {
        IntegrabilityReport {
            frame_pairs_vanish: self.nijenhuis_check(),
            random: self.nijenhuis_random_check(rng, pairs, degree),
        }
    }
}

pub fn nijenhuis(g: &FieldGC, a: &Section, b: &Section) -> Section {
    g.nijenhuis(a, b)
}

pub fn nijenhuis_check(g: &FieldGC) -> bool {
    g.nijenhuis_check()
}
