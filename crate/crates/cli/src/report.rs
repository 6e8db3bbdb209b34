use serde::Serialize;

use pcs_core::algebra::{format_f64, RootResult};
use pcs_core::dcs::{dcs_report, DcsReport};
use pcs_core::io::{format_real, polynomial_strings, SCHEMA_VERSION};
use pcs_core::probability::{uniform_measure, Valuation};
use pcs_core::system::Classification;
use pcs_core::{ConcurrentSystem, NumericPolicy};

use crate::Failure;

#[derive(Debug, Serialize)]
pub struct RootDoc {
    pub decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[String; 2]>,
}

impl RootDoc {
    pub fn new(r: &RootResult) -> Self {
        RootDoc {
            decimal: r.decimal(),
            exact: r.exact_form(),
            bracket: r
                .bracket_f64()
                .map(|(lo, hi)| [format_f64(lo), format_f64(hi)]),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassificationDoc {
    pub trivial: bool,
    pub homogeneous: bool,
    pub alive: bool,
    pub monoid_irreducible: bool,
    pub irreducible: bool,
}

impl From<Classification> for ClassificationDoc {
    fn from(c: Classification) -> Self {
        ClassificationDoc {
            trivial: c.trivial,
            homogeneous: c.homogeneous,
            alive: c.alive,
            monoid_irreducible: c.monoid_irreducible,
            irreducible: c.irreducible,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LawEntry {
    pub clique: String,
    pub p: String,
}

#[derive(Debug, Serialize)]
pub struct StateLaw {
    pub state: String,
    pub law: Vec<LawEntry>,
}

#[derive(Debug, Serialize)]
pub struct UniformDoc {
    pub r: RootDoc,
    pub kernel: Vec<String>,
    /// `gamma[α][β] = Γ(α, β)`.
    pub gamma: Vec<Vec<String>>,
    pub first_clique: Vec<StateLaw>,
    pub null_nodes: Vec<[String; 2]>,
}

#[derive(Debug, Serialize)]
pub struct SpectralDoc {
    pub letter: String,
    pub root: RootDoc,
    pub strict: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundaryDoc {
    pub state: String,
    pub class: &'static str,
    pub singleton: bool,
}

#[derive(Debug, Serialize)]
pub struct DcsDoc {
    pub irreducible: bool,
    pub deterministic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinism_witness: Option<String>,
    pub dominant_probabilistic: bool,
    /// Implied by the other conditions for irreducible systems, never searched.
    pub dominant_unique: Option<bool>,
    pub root_is_one: bool,
    pub one_countable: bool,
    pub every_countable: bool,
    pub one_singleton: bool,
    pub every_singleton: bool,
    pub boundary: Vec<BoundaryDoc>,
    pub consistent: Option<bool>,
}

impl DcsDoc {
    fn new(s: &ConcurrentSystem, r: DcsReport) -> Self {
        DcsDoc {
            irreducible: r.irreducible,
            deterministic: r.deterministic,
            determinism_witness: r.determinism_witness,
            dominant_probabilistic: r.dominant_probabilistic,
            dominant_unique: r.dominant_unique,
            root_is_one: r.root_is_one,
            one_countable: r.one_countable,
            every_countable: r.every_countable,
            one_singleton: r.one_singleton,
            every_singleton: r.every_singleton,
            boundary: r
                .boundary
                .iter()
                .map(|(a, b)| BoundaryDoc {
                    state: s.state_name(*a).into(),
                    class: b.class.name(),
                    singleton: b.singleton,
                })
                .collect(),
            consistent: r.consistent,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub classification: ClassificationDoc,
    /// Entries as coefficient arrays.
    pub mobius_matrix: Vec<Vec<Vec<String>>>,
    pub theta: Vec<String>,
    pub theta_text: String,
    pub root: RootDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform: Option<UniformDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Vec<SpectralDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcs: Option<DcsDoc>,
}

pub struct Flags {
    pub uniform: bool,
    pub dcs: bool,
    pub spectral: bool,
    pub order: Option<usize>,
}

pub fn first_clique_laws(
    v: &Valuation<'_>,
    policy: &NumericPolicy,
) -> Result<Vec<StateLaw>, Failure> {
    let s = v.system();
    s.state_ids()
        .map(|alpha| {
            let law = v
                .first_clique_distribution(alpha, policy)
                .map_err(Failure::from)?
                .into_iter()
                .map(|(c, p)| LawEntry {
                    clique: s.monoid().clique_name(c),
                    p: format_real(&p),
                })
                .collect();
            Ok(StateLaw {
                state: s.state_name(alpha).into(),
                law,
            })
        })
        .collect()
}

pub fn null_node_names(v: &Valuation<'_>, policy: &NumericPolicy) -> Vec<[String; 2]> {
    let s = v.system();
    let g = s.sc_digraph();
    v.null_nodes(policy)
        .into_iter()
        .map(|i| {
            let n = g.nodes[i];
            [
                s.state_name(n.state).into(),
                s.monoid().clique_name(n.clique),
            ]
        })
        .collect()
}

pub fn analyze(
    s: &ConcurrentSystem,
    flags: &Flags,
    policy: &NumericPolicy,
) -> Result<AnalysisReport, Failure> {
    let m = s.monoid();
    let mu = s.mobius_matrix();
    let theta = s.theta();
    let root = s.characteristic_root(policy).map_err(Failure::from)?;
    let growth = flags.order.map(|n| {
        s.growth_matrix_counts(n)
            .into_iter()
            .map(|g| {
                g.iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect()
            })
            .collect()
    });
    let (uniform, uniform_error) = if flags.uniform {
        match uniform_measure(s, policy) {
            Ok(u) => {
                let v = u.valuation();
                let doc = UniformDoc {
                    r: RootDoc::new(u.root()),
                    kernel: u.kernel().iter().map(format_real).collect(),
                    gamma: u
                        .gamma_table()
                        .iter()
                        .map(|r| r.iter().map(format_real).collect())
                        .collect(),
                    first_clique: first_clique_laws(v, policy)?,
                    null_nodes: null_node_names(v, policy),
                };
                (Some(doc), None)
            }
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let spectral = if flags.spectral {
        let rep = s.spectral_check(policy).map_err(Failure::from)?;
        Some(
            rep.entries
                .iter()
                .map(|e| SpectralDoc {
                    letter: m.name(e.letter).into(),
                    root: RootDoc::new(&e.root),
                    strict: e.strict,
                })
                .collect(),
        )
    } else {
        None
    };
    let dcs = if flags.dcs {
        Some(DcsDoc::new(
            s,
            dcs_report(s, policy).map_err(Failure::from)?,
        ))
    } else {
        None
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        states: s.state_names().to_vec(),
        alphabet: m.names().to_vec(),
        classification: s.classify().into(),
        mobius_matrix: mu
            .rows()
            .iter()
            .map(|r| r.iter().map(polynomial_strings).collect())
            .collect(),
        theta: polynomial_strings(&theta),
        theta_text: theta.to_string(),
        root: RootDoc::new(&root),
        growth,
        uniform,
        uniform_error,
        spectral,
        dcs,
    })
}
