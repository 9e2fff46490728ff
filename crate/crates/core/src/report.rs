//! Serializable analysis reports.

use std::fmt::Display;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::algebra::{build_algebra, AlgebraTable, Presentation};
use crate::derlie::{hh1, loop_criterion, DerivedSeries, Hh1, LoopCriterion, LowerCentralSeries};
use crate::error::{DeltaError, Error};
use crate::field::FieldDescriptor;
use crate::kronecker::{chain_report, ChainReport, HypothesisFlags};
use crate::linalg::Vector;
use crate::oracle::{bar_hh1_dim, check_dim, CochainProblem};
use crate::quiver::{classify_components, reptype_radsq, separated_quiver, ComponentClass, GraphType, RepType};

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_vectors<S: Serializer>(vs: &[Vector], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub field: Option<FieldDescriptor>,
    pub oracle: bool,
    /// Refuse characteristic 2 instead of reporting chains without `m`.
    pub decompose: bool,
    pub assert_nonwild: bool,
    pub max_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraStats {
    #[serde(serialize_with = "ser_display")]
    pub field: FieldDescriptor,
    pub vertices: usize,
    pub arrows: usize,
    pub dim: usize,
    pub rad_dims: Vec<usize>,
    pub basis: Vec<String>,
}

impl AlgebraStats {
    pub fn new(a: &AlgebraTable) -> Self {
        AlgebraStats {
            field: a.field(),
            vertices: a.vertex_count(),
            arrows: a.quiver().arrow_count(),
            dim: a.dim(),
            rad_dims: a.rad_dims(),
            basis: (0..a.dim()).map(|i| a.label(i).to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub dim: usize,
    pub der_dim: usize,
    pub inner_dim: usize,
    /// Representative derivation of each basis class.
    pub basis: Vec<String>,
    /// `structure_constants[i][j]` is `[x_i, x_j]` in the basis above.
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub derived_series: DerivedSeries,
    pub lower_central_series: LowerCentralSeries,
    pub solvable: bool,
    pub nilpotent: bool,
}

impl LieReport {
    pub fn new(h: &Hh1) -> Self {
        let ds = h.lie.derived_series();
        let lcs = h.lie.lower_central_series();
        LieReport {
            dim: h.dim(),
            der_dim: h.der.dim(),
            inner_dim: h.inner.dim(),
            basis: h.lie.labels.clone(),
            structure_constants: h
                .lie
                .brackets
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect())
                .collect(),
            solvable: ds.solvable,
            nilpotent: lcs.nilpotent,
            derived_series: ds,
            lower_central_series: lcs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SepTypeReport {
    pub components: Vec<ComponentClass>,
    /// Representation type of `A / rad(A)^2`.
    pub radical_square_zero_type: RepType,
    pub contains_a1_tilde: bool,
}

pub fn septype_report(a: &AlgebraTable) -> SepTypeReport {
    let class = classify_components(&separated_quiver(a.quiver()));
    SepTypeReport {
        contains_a1_tilde: class.contains(GraphType::Euclidean, "~A1"),
        components: class.components,
        radical_square_zero_type: reptype_radsq(a.quiver()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub bar_hh1_dim: usize,
    pub agrees: bool,
    pub cochain_composite_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predictions {
    /// Solvability of `HH^1_rad` forced for non-wild algebras when the
    /// characteristic is 2, or when the separated quiver has no `~A1`.
    pub hh1_rad_solvable: Option<bool>,
    /// Solvability of `HH^1` forced in characteristic 2 for connected,
    /// non-local, non-wild algebras.
    pub hh1_solvable_char2: Option<bool>,
    /// Solvability of `HH^1_rad` read off `m` (characteristic not 2).
    pub hh1_rad_solvable_from_m: Option<bool>,
    /// Every prediction above matches the computed Lie algebras.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    #[serde(flatten)]
    pub hypotheses: HypothesisFlags,
    pub loop_criterion_holds: bool,
    pub predictions: Predictions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub algebra: AlgebraStats,
    pub hh1: LieReport,
    pub hh1_rad: LieReport,
    pub loop_criterion: LoopCriterion,
    pub septype: SepTypeReport,
    pub chains: ChainReport,
    pub m: Option<usize>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable report")
    }
}

fn apply_options(p: &Presentation, opts: &AnalyzeOptions) -> Presentation {
    let mut p = p.clone();
    if let Some(cap) = opts.max_length {
        p.max_length_cap = cap;
    }
    p
}

/// Builds the algebra of a presentation, honouring `--max-length`.
pub fn build_with(p: &Presentation, opts: &AnalyzeOptions) -> Result<AlgebraTable, Error> {
    Ok(build_algebra(&apply_options(p, opts))?)
}

pub fn oracle_report(a: &AlgebraTable, hh1_dim: usize) -> Result<OracleReport, Error> {
    let problem = CochainProblem::new(a.table())?;
    let bar = bar_hh1_dim(a)?;
    Ok(OracleReport { bar_hh1_dim: bar, agrees: bar == hh1_dim, cochain_composite_zero: problem.composite_vanishes() })
}

/// Full pipeline: algebra, derivations, separated quiver, chains, optional oracle.
pub fn run_analyze(p: &Presentation, opts: &AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let a = build_with(p, opts)?;
    analyze_algebra(&a, opts)
}

pub fn analyze_algebra(a: &AlgebraTable, opts: &AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let ch = a.field().characteristic();
    if opts.decompose && ch == 2 {
        return Err(DeltaError::UnsupportedCharacteristic(ch).into());
    }
    if opts.oracle {
        check_dim(a.dim())?;
    }
    let h_all = hh1(a, false);
    let h_rad = hh1(a, true);
    let lc = loop_criterion(a);
    let sep = septype_report(a);
    let chains = chain_report(a, &h_rad, opts.assert_nonwild);
    let oracle = if opts.oracle { Some(oracle_report(a, h_all.dim())?) } else { None };

    let rad_solvable = h_rad.lie.derived_series().solvable;
    let all_solvable = h_all.lie.derived_series().solvable;
    let hh1_rad_solvable = (ch == 2 || !sep.contains_a1_tilde).then_some(true);
    let connected = a.quiver().components().len() == 1;
    let hh1_solvable_char2 = (ch == 2 && connected && a.vertex_count() > 1).then_some(true);
    let from_m = chains.m.map(|m| m == 0);
    let consistent = hh1_rad_solvable.is_none_or(|p| p == rad_solvable)
        && hh1_solvable_char2.is_none_or(|p| p == all_solvable)
        && from_m.is_none_or(|p| p == rad_solvable);
    let flags = Flags {
        hypotheses: chains.flags.clone(),
        loop_criterion_holds: lc.holds,
        predictions: Predictions { hh1_rad_solvable, hh1_solvable_char2, hh1_rad_solvable_from_m: from_m, consistent },
    };
    Ok(AnalysisReport {
        algebra: AlgebraStats::new(a),
        hh1: LieReport::new(&h_all),
        hh1_rad: LieReport::new(&h_rad),
        loop_criterion: lc,
        septype: sep,
        m: chains.m,
        chains,
        flags,
        oracle,
    })
}
