use crate::core::{crowding_distances, dominates, FloatSolution};

/// Bounded archive of mutually non-dominated solutions. When full, the member with the
/// smallest crowding distance is dropped.
#[derive(Debug, Clone)]
pub struct CrowdingArchive {
    capacity: usize,
    members: Vec<FloatSolution>,
}

impl CrowdingArchive {
    pub fn new(capacity: usize) -> Self {
        CrowdingArchive {
            capacity: capacity.max(1),
            members: Vec::with_capacity(capacity + 1),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FloatSolution] {
        &self.members
    }

    /// Inserts `candidate` unless an existing member dominates it or has the same
    /// objectives. Members it dominates are evicted. Returns whether it is in the archive
    /// afterwards.
    pub fn add(&mut self, candidate: FloatSolution) -> bool {
        for m in &self.members {
            if dominates(&m.objectives, &candidate.objectives) || m.objectives == candidate.objectives {
                return false;
            }
        }
        self.members
            .retain(|m| !dominates(&candidate.objectives, &m.objectives));
        self.members.push(candidate);
        if self.members.len() > self.capacity {
            let last = self.members.len() - 1;
            return self.prune() != last;
        }
        true
    }

    fn prune(&mut self) -> usize {
        let points: Vec<&[f64]> = self.members.iter().map(|s| s.objectives.as_slice()).collect();
        let d = crowding_distances(&points);
        let worst = d
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("archive is not empty");
        self.members.remove(worst);
        worst
    }

    /// Current crowding distance of every member.
    pub fn crowding(&self) -> Vec<f64> {
        let points: Vec<&[f64]> = self.members.iter().map(|s| s.objectives.as_slice()).collect();
        crowding_distances(&points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(o: &[f64]) -> FloatSolution {
        FloatSolution::with_objectives(vec![], o.to_vec())
    }

    #[test]
    fn rejects_dominated_and_duplicates() {
        let mut a = CrowdingArchive::new(10);
        assert!(a.add(s(&[0.5, 0.5])));
        assert!(!a.add(s(&[0.6, 0.6])));
        assert!(!a.add(s(&[0.5, 0.5])));
        assert!(a.add(s(&[0.1, 0.9])));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn dominating_entry_at_capacity_evicts() {
        let mut a = CrowdingArchive::new(3);
        for p in [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]] {
            assert!(a.add(s(&p)));
        }
        assert!(a.add(s(&[0.4, 0.4])));
        assert_eq!(a.len(), 3);
        assert!(!a.members().iter().any(|m| m.objectives == vec![0.5, 0.5]));
    }

    #[test]
    fn overflow_drops_most_crowded() {
        let mut a = CrowdingArchive::new(3);
        for p in [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0], [0.45, 0.55]] {
            a.add(s(&p));
        }
        assert_eq!(a.len(), 3);
        let objs: Vec<_> = a.members().iter().map(|m| m.objectives.clone()).collect();
        assert!(objs.contains(&vec![0.0, 1.0]) && objs.contains(&vec![1.0, 0.0]));
    }
}
