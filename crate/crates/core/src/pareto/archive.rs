use super::dominance::{compare, Dominance};
use super::{BitString, ObjectiveVector, Solution};

/// Unbounded store of mutually non-dominated solutions.
///
/// Distinct genomes with identical objective vectors are all kept; an exact
/// duplicate (same genome) is rejected.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Archive {
    members: Vec<Solution>,
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offers `candidate`; returns whether it was accepted.
    pub fn insert(&mut self, candidate: Solution) -> bool {
        if !self.admits(&candidate.genome, candidate.objectives.as_slice()) {
            return false;
        }
        self.push_admitted(candidate);
        true
    }

    /// Like [`Archive::insert`], cloning the genome only when accepted.
    pub fn offer(&mut self, genome: &BitString, objectives: &ObjectiveVector) -> bool {
        if !self.admits(genome, objectives.as_slice()) {
            return false;
        }
        self.push_admitted(Solution::new(genome.clone(), objectives.clone()));
        true
    }

    fn admits(&self, genome: &BitString, c: &[f64]) -> bool {
        self.members.iter().all(|member| {
            let m = member.objectives.as_slice();
            match compare(m, c) {
                Dominance::Dominates => false,
                Dominance::Neither => !(m == c && member.genome == *genome),
                Dominance::DominatedBy => true,
            }
        })
    }

    fn push_admitted(&mut self, candidate: Solution) {
        let c = candidate.objectives.as_slice();
        self.members.retain(|member| compare(c, member.objectives.as_slice()) != Dominance::Dominates);
        self.members.push(candidate);
        debug_assert!(self.is_consistent());
    }

    pub fn extend<I: IntoIterator<Item = Solution>>(&mut self, candidates: I) -> usize {
        candidates.into_iter().map(|s| self.insert(s) as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Solution> {
        self.members
    }

    pub fn objective_vectors(&self) -> Vec<Vec<f64>> {
        self.members.iter().map(|s| s.objectives.as_slice().to_vec()).collect()
    }

    /// The newest member is incomparable with every other one. Checked after
    /// each accepted insert, which keeps the whole archive pairwise
    /// non-dominated by induction.
    fn is_consistent(&self) -> bool {
        let Some((last, rest)) = self.members.split_last() else {
            return true;
        };
        rest.iter().all(|m| compare(m.objectives.as_slice(), last.objectives.as_slice()) == Dominance::Neither)
    }
}
