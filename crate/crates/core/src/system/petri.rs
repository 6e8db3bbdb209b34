use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{ConcurrentSystem, StateId, SystemError};
use crate::trace::TraceMonoid;

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetriTransition {
    pub name: String,
    pub pre: Vec<String>,
    pub post: Vec<String>,
}

/// A 1-safe Petri net; markings are sets of places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetriNet {
    pub places: Vec<String>,
    pub transitions: Vec<PetriTransition>,
    pub initial: Vec<String>,
}

type Marking = BTreeSet<usize>;

impl PetriNet {
    fn place_set(
        &self,
        index: &HashMap<&str, usize>,
        names: &[String],
    ) -> Result<Marking, SystemError> {
        names
            .iter()
            .map(|p| {
                index
                    .get(p.as_str())
                    .copied()
                    .ok_or_else(|| SystemError::UnknownPlace(p.clone()))
            })
            .collect()
    }

    fn marking_names(&self, m: &Marking) -> Vec<String> {
        m.iter().map(|&i| self.places[i].clone()).collect()
    }

    /// Monoid, ordered reachable markings and firing edges.
    #[allow(clippy::type_complexity)]
    fn explore(
        &self,
        max_states: usize,
    ) -> Result<(TraceMonoid, Vec<Marking>, Vec<(Marking, usize, Marking)>), SystemError> {
        let index: HashMap<&str, usize> = self
            .places
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let mut pre = Vec::new();
        let mut post = Vec::new();
        for t in &self.transitions {
            pre.push(self.place_set(&index, &t.pre)?);
            post.push(self.place_set(&index, &t.post)?);
        }
        let names: Vec<&str> = self.transitions.iter().map(|t| t.name.as_str()).collect();
        let mut pairs = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let ni: Marking = pre[i].union(&post[i]).copied().collect();
                let nj: Marking = pre[j].union(&post[j]).copied().collect();
                if ni.is_disjoint(&nj) {
                    pairs.push((names[i], names[j]));
                }
            }
        }
        let monoid = TraceMonoid::new(&names, &pairs)?;

        let initial = self.place_set(&index, &self.initial)?;
        let mut seen: BTreeSet<Marking> = BTreeSet::from([initial.clone()]);
        let mut queue = VecDeque::from([initial.clone()]);
        let mut edges: Vec<(Marking, usize, Marking)> = Vec::new();
        while let Some(m) = queue.pop_front() {
            for t in 0..self.transitions.len() {
                if !pre[t].is_subset(&m) {
                    continue;
                }
                let rest: Marking = m.difference(&pre[t]).copied().collect();
                if !rest.is_disjoint(&post[t]) {
                    return Err(SystemError::UnsafeNet {
                        marking: self.marking_names(&m),
                        transition: self.transitions[t].name.clone(),
                    });
                }
                let next: Marking = rest.union(&post[t]).copied().collect();
                if seen.insert(next.clone()) {
                    if seen.len() > max_states {
                        return Err(SystemError::TooManyStates(max_states));
                    }
                    queue.push_back(next.clone());
                }
                edges.push((m.clone(), t, next));
            }
        }

        let mut order: Vec<Marking> = vec![initial.clone()];
        let mut others: Vec<Marking> = seen.into_iter().filter(|m| *m != initial).collect();
        others.sort_by_key(|m| m.iter().copied().collect::<Vec<_>>());
        order.extend(others);
        Ok((monoid, order, edges))
    }

    /// Reachable markings as a concurrent system.
    ///
    /// Transitions are independent when their neighbourhoods `•t ∪ t•` are
    /// disjoint. States are named `α0, α1, …` with the initial marking first
    /// and the others in the order of their sorted place lists.
    pub fn to_system(&self, max_states: usize) -> Result<ConcurrentSystem, SystemError> {
        let (monoid, order, edges) = self.explore(max_states)?;
        let id: HashMap<&Marking, StateId> = order
            .iter()
            .enumerate()
            .map(|(i, m)| (m, StateId(i)))
            .collect();
        let mut action = vec![vec![None; monoid.len()]; order.len()];
        for (from, t, to) in &edges {
            action[id[from].0][*t] = Some(id[to]);
        }
        let states = (0..order.len()).map(|i| format!("α{i}")).collect();
        ConcurrentSystem::from_table(monoid, states, action)
    }

    /// Place lists of the reachable markings, indexed like the states of
    /// [`PetriNet::to_system`].
    pub fn markings(&self, max_states: usize) -> Result<Vec<Vec<String>>, SystemError> {
        let (_, order, _) = self.explore(max_states)?;
        Ok(order.iter().map(|m| self.marking_names(m)).collect())
    }
}
