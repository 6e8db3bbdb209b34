//! JSON documents for monoids, traces, lassos, systems, Petri nets and
//! valuations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, parse_rational, AlgebraError, Polynomial, Real};
use crate::policy::NumericPolicy;
use crate::probability::{MarkovChain, ProbabilityError, Valuation};
use crate::system::{ConcurrentSystem, PetriNet, PetriTransition, SystemError};
use crate::trace::{Clique, Lasso, Trace, TraceError, TraceMonoid};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Schema(String),
    #[error("unsupported schema_version {0}")]
    Version(u32),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Probability(#[from] ProbabilityError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Schema(e.to_string())
    }
}

fn check_version(v: Option<u32>) -> Result<(), IoError> {
    match v {
        Some(v) if v != SCHEMA_VERSION => Err(IoError::Version(v)),
        _ => Ok(()),
    }
}

fn version() -> Option<u32> {
    Some(SCHEMA_VERSION)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub independence: Vec<[String; 2]>,
}

impl MonoidDoc {
    pub fn from_monoid(m: &TraceMonoid) -> Self {
        MonoidDoc {
            schema_version: version(),
            alphabet: m.names().to_vec(),
            independence: m
                .independence_pairs()
                .into_iter()
                .map(|(a, b)| [m.name(a).to_string(), m.name(b).to_string()])
                .collect(),
        }
    }

    pub fn to_monoid(&self) -> Result<TraceMonoid, IoError> {
        check_version(self.schema_version)?;
        let pairs: Vec<(&str, &str)> = self
            .independence
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let names: Vec<&str> = self.alphabet.iter().map(String::as_str).collect();
        Ok(TraceMonoid::new(&names, &pairs)?)
    }
}

fn layer_names(m: &TraceMonoid, layers: &[Clique]) -> Vec<Vec<String>> {
    layers.iter().map(|c| m.clique_names(*c)).collect()
}

fn parse_layers(m: &TraceMonoid, layers: &[Vec<String>]) -> Result<Vec<Clique>, IoError> {
    layers.iter().map(|l| Ok(m.clique(l)?)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub layers: Vec<Vec<String>>,
}

impl TraceDoc {
    pub fn from_trace(m: &TraceMonoid, x: &Trace) -> Self {
        TraceDoc {
            schema_version: version(),
            layers: layer_names(m, x.layers()),
        }
    }

    pub fn to_trace(&self, m: &TraceMonoid) -> Result<Trace, IoError> {
        check_version(self.schema_version)?;
        Ok(m.trace_from_layers(parse_layers(m, &self.layers)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub prefix: Vec<Vec<String>>,
    #[serde(default)]
    pub cycle: Vec<Vec<String>>,
}

impl LassoDoc {
    pub fn from_lasso(m: &TraceMonoid, w: &Lasso) -> Self {
        LassoDoc {
            schema_version: version(),
            prefix: layer_names(m, w.prefix()),
            cycle: layer_names(m, w.cycle()),
        }
    }

    pub fn to_lasso(&self, m: &TraceMonoid) -> Result<Lasso, IoError> {
        check_version(self.schema_version)?;
        Ok(Lasso::new(
            m,
            parse_layers(m, &self.prefix)?,
            parse_layers(m, &self.cycle)?,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub from: String,
    pub letter: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub monoid: MonoidDoc,
    pub states: Vec<String>,
    #[serde(default)]
    pub action: Vec<ActionEntry>,
}

impl SystemDoc {
    pub fn from_system(s: &ConcurrentSystem) -> Self {
        let m = s.monoid();
        let mut monoid = MonoidDoc::from_monoid(m);
        monoid.schema_version = None;
        SystemDoc {
            schema_version: version(),
            monoid,
            states: s.state_names().to_vec(),
            action: s
                .entries()
                .into_iter()
                .map(|(a, l, b)| ActionEntry {
                    from: s.state_name(a).into(),
                    letter: m.name(l).into(),
                    to: s.state_name(b).into(),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<ConcurrentSystem, IoError> {
        check_version(self.schema_version)?;
        let m = self.monoid.to_monoid()?;
        let entries: Vec<(&str, &str, &str)> = self
            .action
            .iter()
            .map(|e| (e.from.as_str(), e.letter.as_str(), e.to.as_str()))
            .collect();
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        Ok(ConcurrentSystem::new(m, &states, &entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PetriDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub places: Vec<String>,
    pub transitions: Vec<PetriTransition>,
    pub initial: Vec<String>,
}

impl PetriDoc {
    pub fn from_net(net: &PetriNet) -> Self {
        PetriDoc {
            schema_version: version(),
            places: net.places.clone(),
            transitions: net.transitions.clone(),
            initial: net.initial.clone(),
        }
    }

    pub fn to_net(&self) -> Result<PetriNet, IoError> {
        check_version(self.schema_version)?;
        Ok(PetriNet {
            places: self.places.clone(),
            transitions: self.transitions.clone(),
            initial: self.initial.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub state: String,
    pub letter: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub weights: Vec<WeightEntry>,
}

impl ValuationDoc {
    /// Nonzero weights only.
    pub fn from_valuation(v: &Valuation<'_>) -> Self {
        let s = v.system();
        let m = s.monoid();
        let mut weights = Vec::new();
        for alpha in s.state_ids() {
            for a in m.letters() {
                let w = v.weight(alpha, a);
                if !w.is_zero() {
                    weights.push(WeightEntry {
                        state: s.state_name(alpha).into(),
                        letter: m.name(a).into(),
                        value: format_real(w),
                    });
                }
            }
        }
        ValuationDoc {
            schema_version: version(),
            weights,
        }
    }

    pub fn to_valuation<'s>(
        &self,
        s: &'s ConcurrentSystem,
        policy: &NumericPolicy,
    ) -> Result<Valuation<'s>, IoError> {
        check_version(self.schema_version)?;
        let mut entries = Vec::with_capacity(self.weights.len());
        let mut seen = std::collections::HashSet::new();
        for w in &self.weights {
            if !seen.insert((w.state.as_str(), w.letter.as_str())) {
                return Err(IoError::System(SystemError::DuplicateEntry {
                    state: w.state.clone(),
                    letter: w.letter.clone(),
                }));
            }
            entries.push((
                w.state.as_str(),
                w.letter.as_str(),
                Real::Exact(parse_rational(&w.value)?),
            ));
        }
        Ok(Valuation::from_entries(s, &entries, policy)?)
    }
}

/// Reads either a system document or a bare monoid document, the latter
/// as a single-state system.
pub fn system_from_json(text: &str) -> Result<ConcurrentSystem, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("alphabet").is_some() {
        let doc: MonoidDoc = serde_json::from_value(value)?;
        Ok(ConcurrentSystem::from_monoid(doc.to_monoid()?))
    } else {
        let doc: SystemDoc = serde_json::from_value(value)?;
        doc.to_system()
    }
}

pub fn system_to_json(s: &ConcurrentSystem) -> String {
    serde_json::to_string_pretty(&SystemDoc::from_system(s)).expect("serializable")
}

pub fn petri_from_json(text: &str) -> Result<PetriNet, IoError> {
    serde_json::from_str::<PetriDoc>(text)?.to_net()
}

pub fn valuation_from_json<'s>(
    text: &str,
    s: &'s ConcurrentSystem,
    policy: &NumericPolicy,
) -> Result<Valuation<'s>, IoError> {
    serde_json::from_str::<ValuationDoc>(text)?.to_valuation(s, policy)
}

/// Terminating decimals as decimals, other rationals as `p/q`.
pub fn format_exact(q: &BigRational) -> String {
    let mut d = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() || q.is_integer() {
        return format_rational(q);
    }
    let digits = twos.max(fives);
    let scaled = q * BigRational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let n = scaled.to_integer();
    let neg = n < BigInt::zero();
    let s = n.magnitude().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

pub fn format_real(x: &Real) -> String {
    match x {
        Real::Exact(q) => format_exact(q),
        Real::Approx(_) => x.to_string(),
    }
}

pub fn polynomial_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(format_exact).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainNodeDoc {
    pub state: String,
    pub clique: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawEntry {
    pub node: usize,
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub schema_version: u32,
    pub nodes: Vec<ChainNodeDoc>,
    /// One law per state, in state order.
    pub initial: Vec<Vec<LawEntry>>,
    pub rows: Vec<Vec<LawEntry>>,
    pub terminal: Vec<usize>,
}

impl ChainDoc {
    pub fn from_chain(s: &ConcurrentSystem, chain: &MarkovChain) -> Self {
        let g = chain.graph();
        let law = |l: &[(usize, Real)]| {
            l.iter()
                .map(|(j, w)| LawEntry {
                    node: *j,
                    p: format_real(w),
                })
                .collect()
        };
        ChainDoc {
            schema_version: SCHEMA_VERSION,
            nodes: g
                .nodes
                .iter()
                .map(|n| ChainNodeDoc {
                    state: s.state_name(n.state).into(),
                    clique: s.monoid().clique_names(n.clique),
                })
                .collect(),
            initial: s.state_ids().map(|a| law(chain.initial(a))).collect(),
            rows: (0..g.len()).map(|i| law(chain.row(i))).collect(),
            terminal: (0..g.len()).filter(|&i| chain.is_terminal(i)).collect(),
        }
    }
}
