use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::dgp::{DgpFamily, IndependentDgp, OutcomeSpace};
use crate::update::{Rule, UpdateParams};

/// Master seed used when a config does not set one.
pub const DEFAULT_SEED: u64 = 20221105;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Illustrative,
    Coverage,
    Dominance,
    BayesCounterexample,
    RegretExample,
    BernoulliModel,
    GaussianModel,
    HarmSearch,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Illustrative,
        Scenario::Coverage,
        Scenario::Dominance,
        Scenario::BayesCounterexample,
        Scenario::RegretExample,
        Scenario::BernoulliModel,
        Scenario::GaussianModel,
        Scenario::HarmSearch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Illustrative => "illustrative",
            Scenario::Coverage => "coverage",
            Scenario::Dominance => "dominance",
            Scenario::BayesCounterexample => "bayes_counterexample",
            Scenario::RegretExample => "regret_example",
            Scenario::BernoulliModel => "bernoulli_model",
            Scenario::GaussianModel => "gaussian_model",
            Scenario::HarmSearch => "harm_search",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Scenario::Illustrative => {
                "movie recommendation: box family plus one i.i.d. process, two acts, any set rule"
            }
            Scenario::Coverage => {
                "how often the robust i.i.d. tests (ellipsoid and Bonferroni) keep the truth"
            }
            Scenario::Dominance => {
                "random two-sided checks of accommodation vs. objective dominance"
            }
            Scenario::BayesCounterexample => {
                "uniform-prior Bayesian updating concentrating on the wrong branch"
            }
            Scenario::RegretExample => {
                "minimax regret: accommodation without objective improvement"
            }
            Scenario::BernoulliModel => {
                "Bernoulli model with a nuisance share: Wilson-based parameter sets"
            }
            Scenario::GaussianModel => {
                "Gaussian signals with unknown variances: average-then-update on the mean"
            }
            Scenario::HarmSearch => {
                "search for a two-act problem where data hurt under a non-mixture update"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateSection {
    #[serde(default = "default_rule")]
    pub rule: Rule,
    #[serde(default = "default_level")]
    pub epsilon: f64,
    #[serde(default = "default_level")]
    pub alpha: f64,
    #[serde(default)]
    pub bonferroni: bool,
}

fn default_rule() -> Rule {
    Rule::Atu
}

fn default_level() -> f64 {
    0.05
}

impl Default for UpdateSection {
    fn default() -> Self {
        Self {
            rule: Rule::Atu,
            epsilon: 0.05,
            alpha: 0.05,
            bonferroni: false,
        }
    }
}

impl UpdateSection {
    pub fn params(&self) -> UpdateParams {
        UpdateParams {
            epsilon: self.epsilon,
            alpha: self.alpha,
            bonferroni: self.bonferroni,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// A pass/fail bound on a report statistic.
///
/// `stat` is an aggregate name (see `report::AGGREGATE_KEYS`), `values.<key>` for
/// a scenario value, or `metric_at_least` (share of records whose metric is at
/// least `level`). Aggregate checks are evaluated in every record group unless
/// `group` picks one. Bounds are widened by `slack_se` binomial standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub name: String,
    pub stat: String,
    #[serde(default)]
    pub level: Option<f64>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default)]
    pub slack_se: f64,
    #[serde(default)]
    pub group: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominanceSection {
    #[serde(default = "dom_instances")]
    pub instances: usize,
    #[serde(default = "dom_problems")]
    pub problems: usize,
    #[serde(default = "dom_mixture_problems")]
    pub mixture_problems: usize,
    #[serde(default = "dom_d")]
    pub d: usize,
    #[serde(default = "dom_alphas")]
    pub mixture_alphas: Vec<f64>,
}

fn dom_instances() -> usize {
    100
}
fn dom_problems() -> usize {
    10_000
}
fn dom_mixture_problems() -> usize {
    1_000
}
fn dom_d() -> usize {
    3
}
fn dom_alphas() -> Vec<f64> {
    vec![0.0, 0.3, 0.7, 1.0]
}

impl Default for DominanceSection {
    fn default() -> Self {
        Self {
            instances: dom_instances(),
            problems: dom_problems(),
            mixture_problems: dom_mixture_problems(),
            d: dom_d(),
            mixture_alphas: dom_alphas(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BayesSection {
    /// Payoff of the constant act.
    #[serde(default = "bayes_x")]
    pub constant: f64,
    /// Branch whose posterior mass is reported as the metric.
    #[serde(default)]
    pub watch_branch: usize,
}

fn bayes_x() -> f64 {
    0.55
}

impl Default for BayesSection {
    fn default() -> Self {
        Self {
            constant: bayes_x(),
            watch_branch: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegretSection {
    /// Bounds on the probability of outcome 1, initial and updated.
    #[serde(default = "regret_initial")]
    pub initial: [f64; 2],
    #[serde(default = "regret_updated")]
    pub updated: [f64; 2],
    #[serde(default = "regret_x")]
    pub constant: f64,
    #[serde(default = "regret_pstars")]
    pub pstars: Vec<f64>,
}

fn regret_initial() -> [f64; 2] {
    [0.0, 1.0]
}
fn regret_updated() -> [f64; 2] {
    [0.6, 1.0]
}
fn regret_x() -> f64 {
    2.0 / 3.0
}
fn regret_pstars() -> Vec<f64> {
    vec![0.6, 0.62, 0.64, 0.66]
}

impl Default for RegretSection {
    fn default() -> Self {
        Self {
            initial: regret_initial(),
            updated: regret_updated(),
            constant: regret_x(),
            pstars: regret_pstars(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BernoulliSection {
    pub delta: f64,
    pub theta: f64,
    /// Nuisance values cycled over experiments.
    pub psi: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianSection {
    pub theta: f64,
    pub sigmas: Vec<f64>,
    pub sigma_lo: f64,
    pub sigma_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmSearchSection {
    pub initial: DgpFamily,
    pub updated: DgpFamily,
    #[serde(default = "harm_budget")]
    pub budget: usize,
    #[serde(default = "harm_alphas")]
    pub mixture_alphas: Vec<f64>,
}

fn harm_budget() -> usize {
    100_000
}
fn harm_alphas() -> Vec<f64> {
    vec![0.3, 0.7]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub update: UpdateSection,
    #[serde(default)]
    pub outcomes: Option<OutcomeSpace>,
    #[serde(default)]
    pub truth: Option<IndependentDgp>,
    /// Battery of truths; each one is a record group.
    #[serde(default)]
    pub truths: Vec<IndependentDgp>,
    #[serde(default)]
    pub initial: Option<DgpFamily>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub dominance: Option<DominanceSection>,
    #[serde(default)]
    pub bayes: Option<BayesSection>,
    #[serde(default)]
    pub regret: Option<RegretSection>,
    #[serde(default)]
    pub bernoulli: Option<BernoulliSection>,
    #[serde(default)]
    pub gaussian: Option<GaussianSection>,
    #[serde(default)]
    pub harm_search: Option<HarmSearchSection>,
}

fn default_n() -> usize {
    500
}
fn default_reps() -> usize {
    100
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// A config problem, with the line of the offending key when it can be found.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.field) {
            (Some(l), Some(k)) => write!(f, "line {l}: `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "`{k}`: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// 1-based line of the first occurrence of `"key":` in `raw`.
pub fn locate_key(raw: &str, key: &str) -> Option<usize> {
    let pat = format!("\"{key}\"");
    let mut from = 0;
    while let Some(pos) = raw[from..].find(&pat) {
        let at = from + pos;
        let rest = raw[at + pat.len()..].trim_start();
        if rest.starts_with(':') {
            return Some(raw[..at].matches('\n').count() + 1);
        }
        from = at + pat.len();
    }
    None
}

impl ExperimentConfig {
    /// Parse and validate; errors carry the line of the offending key.
    pub fn from_json(raw: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = serde_json::from_str(raw).map_err(|e| ConfigError {
            field: None,
            line: (e.line() > 0).then_some(e.line()),
            message: e.to_string(),
        })?;
        cfg.validate().map_err(|(field, message)| ConfigError {
            line: locate_key(raw, field),
            field: Some(field.to_string()),
            message,
        })?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let raw = std::fs::read_to_string(path).map_err(|e| ConfigError {
            field: None,
            line: None,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::from_json(&raw)
    }

    pub fn outcome_space(&self) -> OutcomeSpace {
        self.outcomes.clone().unwrap_or_else(OutcomeSpace::binary)
    }

    /// Truths in group order: the `truths` battery, else the single `truth`.
    pub fn truth_battery(&self) -> Vec<IndependentDgp> {
        if self.truths.is_empty() {
            self.truth.iter().cloned().collect()
        } else {
            self.truths.clone()
        }
    }

    /// Field name and message of the first semantic problem.
    pub fn validate(&self) -> Result<(), (&'static str, String)> {
        if self.reps == 0 {
            return Err(("reps", "must be at least 1".into()));
        }
        let needs_sample = !matches!(
            self.scenario,
            Scenario::Dominance | Scenario::RegretExample | Scenario::HarmSearch
        );
        if needs_sample && self.n == 0 {
            return Err(("n", "must be at least 1".into()));
        }
        self.update
            .params()
            .validate()
            .map_err(|e| ("update", e.to_string()))?;
        let d = self.outcome_space().d();
        for t in self.truth.iter().chain(&self.truths) {
            if t.d() != d {
                return Err((
                    "truth",
                    format!("has {} outcomes, the outcome space has {d}", t.d()),
                ));
            }
        }
        if let Some(f) = &self.initial {
            match f.d() {
                Some(fd) if fd != d => {
                    return Err((
                        "initial",
                        format!("has {fd} outcomes, the outcome space has {d}"),
                    ))
                }
                None => return Err(("initial", "is empty".into())),
                _ => {}
            }
        }
        for c in &self.checks {
            if c.min.is_none() && c.max.is_none() {
                return Err((
                    "checks",
                    format!("check `{}` has neither min nor max", c.name),
                ));
            }
            if !crate::sim::report::is_known_stat(&c.stat) {
                return Err(("checks", format!("unknown statistic `{}`", c.stat)));
            }
            if c.stat == "metric_at_least" && c.level.is_none() {
                return Err(("checks", format!("check `{}` needs a level", c.name)));
            }
        }
        match self.scenario {
            Scenario::Illustrative => {
                if self.truth_battery().is_empty() {
                    return Err(("truth", "the illustrative scenario needs a truth".into()));
                }
                if matches!(self.update.rule, Rule::Bayes) {
                    return Err((
                        "rule",
                        "the illustrative scenario takes a set-valued rule".into(),
                    ));
                }
            }
            Scenario::Coverage => {
                if !matches!(self.update.rule, Rule::Riid | Rule::Bonferroni) {
                    return Err((
                        "rule",
                        "coverage measures the riid or bonferroni test".into(),
                    ));
                }
                if self.truth_battery().is_empty() {
                    return Err((
                        "truths",
                        "the coverage scenario needs at least one truth".into(),
                    ));
                }
            }
            Scenario::BayesCounterexample => {
                if self.truth.is_none() {
                    return Err(("truth", "the Bayesian scenario needs a truth".into()));
                }
            }
            Scenario::BernoulliModel => {
                let Some(b) = &self.bernoulli else {
                    return Err(("bernoulli", "section is required for this scenario".into()));
                };
                if !(0.0..1.0).contains(&b.delta) || !(0.0..=1.0).contains(&b.theta) {
                    return Err((
                        "bernoulli",
                        "need 0 <= delta < 1 and theta in [0, 1]".into(),
                    ));
                }
                if b.psi.is_empty() || b.psi.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return Err(("psi", "needs at least one value, each in [0, 1]".into()));
                }
            }
            Scenario::GaussianModel => {
                let Some(g) = &self.gaussian else {
                    return Err(("gaussian", "section is required for this scenario".into()));
                };
                let model = crate::models::GaussianSignalsModel::new(
                    g.sigma_lo,
                    g.sigma_hi,
                    self.update.epsilon,
                )
                .map_err(|e| ("gaussian", e.to_string()))?;
                if g.sigmas.is_empty() || !model.admits(&g.sigmas) {
                    return Err((
                        "sigmas",
                        "must be nonempty and within [sigma_lo, sigma_hi]".into(),
                    ));
                }
            }
            Scenario::HarmSearch => {
                let Some(t) = &self.harm_search else {
                    return Err((
                        "harm_search",
                        "section is required for this scenario".into(),
                    ));
                };
                if self.truth.is_none() {
                    return Err((
                        "truth",
                        "the demo needs a truth inside the updated hull".into(),
                    ));
                }
                if t.budget == 0 {
                    return Err(("budget", "must be at least 1".into()));
                }
            }
            Scenario::Dominance => {
                if let Some(s) = &self.dominance {
                    if s.d < 2 || s.instances == 0 {
                        return Err(("dominance", "needs d >= 2 and at least one instance".into()));
                    }
                }
            }
            Scenario::RegretExample => {}
        }
        Ok(())
    }
}
