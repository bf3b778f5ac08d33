//! Acts, decision problems, hulls of future marginals, maxmin and minimax-regret
//! choices, objective payoffs, and the accommodation and refinement predicates.

pub mod accommodate;
pub mod act;
pub mod choice;
pub mod hull;

pub use accommodate::{accommodates, refines, separating_basic_problem, Verdict};
pub use act::{Act, DecisionProblem, PAYOFF_TOL};
pub use choice::{
    certainty_equivalent, data_driven_choice, data_free_choice, max_regrets, meu_choice,
    minimax_regret_choice, objective_payoff,
};
pub use hull::{
    future_hull, future_hull_capped, min_expected_utility, MarginalHull, DEFAULT_HULL_CAP,
};
