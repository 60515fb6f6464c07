use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::game::Solution;

/// Limits on an exact search. All limits are optional; the unlimited budget
/// is fine for optimization calls but decision calls insist on one limit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_depth: Option<usize>,
    pub max_expanded_states: Option<u64>,
    #[serde(with = "millis", default)]
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn states(max: u64) -> Self {
        SearchBudget {
            max_expanded_states: Some(max),
            ..Self::default()
        }
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            time_limit: Some(limit),
            ..Self::default()
        }
    }

    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = Some(depth);
        self
    }

    pub fn has_limit(&self) -> bool {
        self.max_depth.is_some() || self.max_expanded_states.is_some() || self.time_limit.is_some()
    }
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&(d.as_millis() as u64)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Skip moves whose new color is absent from the played component's
    /// neighborhood. A heuristic: optimality claims are void when set.
    pub prune_nonmerging: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    /// `max_depth` was reached: the optimum is at least `value`.
    BoundProved,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub value: Option<usize>,
    /// The optimal witness, or the best solution known when the search stopped.
    pub solution: Option<Solution>,
    pub expanded: u64,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
}

impl SolveResult {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Solution),
    No,
    Unknown,
}
