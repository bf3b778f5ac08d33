//! JSON documents for processes and families.
//!
//! ```json
//! {"prefix": [[0.8, 0.2]], "tail": {"periodic": [[0.4, 0.6], [0.0, 1.0]]}}
//! {"union": [{"box": [{"p1": [0.6, 1.0]}]}, {"explicit": [{"tail": {"iid": [0.6667, 0.3333]}}]}]}
//! ```
//!
//! A box entry is either `{"lo": [..], "hi": [..]}` or, for binary outcomes,
//! `{"p1": [a, b]}` bounding the probability of outcome 1. Constraints recorded
//! by updating rules are not part of the document.

use serde::{Deserialize, Serialize};

use crate::dgp::family::{BoxFamily, DgpFamily, MarginalBox};
use crate::dgp::marginal::Marginal;
use crate::dgp::process::{IndependentDgp, Tail};
use crate::error::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TailDoc {
    Iid(Marginal),
    Periodic(Vec<Marginal>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgpDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prefix: Vec<Marginal>,
    pub tail: TailDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoxDoc {
    Bounds { lo: Vec<f64>, hi: Vec<f64> },
    P1 { p1: [f64; 2] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilyDoc {
    Box(Vec<BoxDoc>),
    Explicit(Vec<IndependentDgp>),
    Union(Vec<DgpFamily>),
}

impl TryFrom<DgpDoc> for IndependentDgp {
    type Error = Error;
    fn try_from(doc: DgpDoc) -> Result<Self, Error> {
        let tail = match doc.tail {
            TailDoc::Iid(m) => Tail::Iid(m),
            TailDoc::Periodic(c) => Tail::Periodic(c),
        };
        IndependentDgp::new(doc.prefix, tail)
    }
}

impl From<IndependentDgp> for DgpDoc {
    fn from(p: IndependentDgp) -> Self {
        let tail = match p.tail() {
            Tail::Iid(m) => TailDoc::Iid(m.clone()),
            Tail::Periodic(c) => TailDoc::Periodic(c.clone()),
        };
        DgpDoc {
            prefix: p.prefix().to_vec(),
            tail,
        }
    }
}

impl TryFrom<BoxDoc> for MarginalBox {
    type Error = Error;
    fn try_from(doc: BoxDoc) -> Result<Self, Error> {
        match doc {
            BoxDoc::Bounds { lo, hi } => MarginalBox::new(lo, hi),
            BoxDoc::P1 { p1: [a, b] } => MarginalBox::bernoulli(a, b),
        }
    }
}

impl TryFrom<FamilyDoc> for DgpFamily {
    type Error = Error;
    fn try_from(doc: FamilyDoc) -> Result<Self, Error> {
        match doc {
            FamilyDoc::Box(boxes) => Ok(DgpFamily::Box(BoxFamily::new(
                boxes
                    .into_iter()
                    .map(MarginalBox::try_from)
                    .collect::<Result<_, _>>()?,
            )?)),
            FamilyDoc::Explicit(members) => DgpFamily::explicit(members),
            FamilyDoc::Union(branches) => DgpFamily::union(branches),
        }
    }
}

impl From<DgpFamily> for FamilyDoc {
    fn from(f: DgpFamily) -> Self {
        match f {
            DgpFamily::Box(b) => FamilyDoc::Box(
                b.cycle()
                    .iter()
                    .map(|x| BoxDoc::Bounds {
                        lo: x.lo().to_vec(),
                        hi: x.hi().to_vec(),
                    })
                    .collect(),
            ),
            DgpFamily::Explicit(m) => FamilyDoc::Explicit(m),
            DgpFamily::Union(bs) => FamilyDoc::Union(bs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dgp_round_trip() {
        let src = r#"{"prefix": [[0.8, 0.2]], "tail": {"periodic": [[0.4, 0.6], [0.0, 1.0]]}}"#;
        let p: IndependentDgp = serde_json::from_str(src).unwrap();
        assert_eq!(p.marginal_at(3).prob(1), 1.0);
        let back: IndependentDgp =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert!(p.same_process(&back, 1e-12));
    }

    #[test]
    fn family_from_json() {
        let src = r#"{"union": [{"box": [{"p1": [0.6, 1.0]}]},
                                {"explicit": [{"tail": {"iid": [0.5, 0.5]}}]}]}"#;
        let f: DgpFamily = serde_json::from_str(src).unwrap();
        assert!(f
            .contains(&IndependentDgp::bernoulli_iid(0.7).unwrap())
            .unwrap());
        assert!(f
            .contains(&IndependentDgp::bernoulli_iid(0.5).unwrap())
            .unwrap());
        let back: DgpFamily = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back.leaves().len(), 2);
    }

    #[test]
    fn invalid_documents_rejected() {
        assert!(serde_json::from_str::<DgpFamily>(r#"{"box": [{"p1": [0.7, 0.6]}]}"#).is_err());
        assert!(serde_json::from_str::<DgpFamily>(r#"{"explicit": []}"#).is_err());
        assert!(
            serde_json::from_str::<IndependentDgp>(r#"{"tail": {"iid": [0.5, 0.6]}}"#).is_err()
        );
    }
}
