use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite, ordered set of experiment outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct OutcomeSpace {
    labels: Vec<String>,
}

impl OutcomeSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidOutcomeSpace(format!(
                "need at least two outcomes, got {}",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidOutcomeSpace(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// The `{0, 1}` space used by every binary example; index 1 is the outcome "1".
    pub fn binary() -> Self {
        Self {
            labels: vec!["0".into(), "1".into()],
        }
    }

    /// Outcomes labelled `s0..s{d-1}`.
    pub fn indexed(d: usize) -> Result<Self> {
        Self::new((0..d).map(|j| format!("s{j}")))
    }

    pub fn d(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl TryFrom<Vec<String>> for OutcomeSpace {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<OutcomeSpace> for Vec<String> {
    fn from(s: OutcomeSpace) -> Self {
        s.labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_singletons() {
        assert!(OutcomeSpace::new(["a"]).is_err());
        assert!(OutcomeSpace::new(["a", "b", "a"]).is_err());
        let s = OutcomeSpace::new(["like", "dislike"]).unwrap();
        assert_eq!(s.d(), 2);
        assert_eq!(s.index_of("dislike"), Some(1));
    }
}
