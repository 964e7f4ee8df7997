//! Batch verification campaigns behind the command-line interface: parameter
//! enumeration tables, formal-degree reports, and Galois-twist verdict tables.
//!
//! All verdict rows carry exact values (rational functions, rationals) as the
//! normative data; decimals are advisory and fixed at 12 significant digits.
//! Outputs are emitted in a canonical order so identical configurations
//! produce byte-identical documents.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rat_from_str, GaloisAutomorphism, Rat};
use crate::degree::{
    degree_numeric, float_oracle_degree, plain_m_squared_sum, termwise_plain_equal,
    FormalDegreeReport, SumData,
};
use crate::error::{Error, Result};
use crate::hecke::{verify_relations, HeckeAlgebra, RelationReport};
use crate::parameters::{
    adjoint_datum, adjoint_point, adjoint_projection, centralizer_dimension,
    enumerate_parameters, galois_twist_with, is_essentially_discrete, KLParameter, ParameterWire,
};
use crate::ratfun::RatFun;
use crate::root_datum::{DominantWeight, RootDatum};
use crate::weyl::WeylGroup;

pub const SCHEMA_VERSION: &str = "1";

pub fn decimal12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// A verification campaign over enumerated GL_n parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Matrix sizes to enumerate.
    pub sizes: Vec<usize>,
    /// Torsion levels to enumerate.
    pub torsion_levels: Vec<u32>,
    /// Galois exponents; None runs all k coprime to each level.
    #[serde(default)]
    pub gammas: Option<Vec<u32>>,
    pub height_bound: i64,
    /// Values of q, as exact rationals in "p/q" form.
    pub q0: Vec<String>,
    /// Tolerance for the numeric formal-degree comparison.
    #[serde(default = "default_tolerance")]
    pub numeric_tolerance: f64,
    #[serde(default = "default_rho")]
    pub rho_dim: u32,
}

fn default_tolerance() -> f64 {
    1e-8
}

fn default_rho() -> u32 {
    1
}

impl CampaignConfig {
    pub fn parse_q0(&self) -> Result<Vec<Rat>> {
        if self.q0.is_empty() {
            return Err(Error::InvalidParameter("at least one q0 is required".into()));
        }
        let mut out = Vec::new();
        for s in &self.q0 {
            let q = rat_from_str(s)?;
            if q <= Rat::from_integer(1.into()) {
                return Err(Error::InvalidParameter(format!("q0 = {s} must exceed 1")));
            }
            out.push(q);
        }
        Ok(out)
    }

    pub fn gammas_for(&self, level: u32) -> Result<Vec<GaloisAutomorphism>> {
        match &self.gammas {
            None => Ok(GaloisAutomorphism::all(level)),
            Some(ks) => ks.iter().map(|&k| GaloisAutomorphism::new(level, k)).collect(),
        }
    }

    /// Validate every guard before any work is scheduled.
    pub fn validate(&self) -> Result<()> {
        if self.height_bound < 0 {
            return Err(Error::InvalidParameter("height bound must be nonnegative".into()));
        }
        self.parse_q0()?;
        for &n in &self.sizes {
            for &level in &self.torsion_levels {
                // Probes the enumeration guards without materializing results.
                enumerate_parameters(n, level)?;
                self.gammas_for(level)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateRow {
    pub index: usize,
    pub parameter: ParameterWire,
    pub label: String,
    pub valid: bool,
    pub centralizer_dim: usize,
    pub discrete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateTable {
    pub schema_version: &'static str,
    pub n: usize,
    pub torsion_level: u32,
    pub rows: Vec<EnumerateRow>,
}

pub fn run_enumerate(n: usize, torsion_level: u32) -> Result<EnumerateTable> {
    let params = enumerate_parameters(n, torsion_level)?;
    let rows = params
        .iter()
        .enumerate()
        .map(|(index, p)| {
            Ok(EnumerateRow {
                index,
                parameter: ParameterWire::from_parameter(p),
                label: p.label(),
                valid: p.is_valid(),
                centralizer_dim: centralizer_dimension(p)?,
                discrete: is_essentially_discrete(p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnumerateTable { schema_version: SCHEMA_VERSION, n, torsion_level, rows })
}

pub fn enumerate_to_csv(table: &EnumerateTable) -> String {
    let mut out = String::from("index,n,partition,torsion_level,torsion_num,valid,discrete,centralizer_dim\n");
    for r in &table.rows {
        let partition: Vec<String> = r.parameter.partition.iter().map(|p| p.to_string()).collect();
        let torsion: Vec<String> = r.parameter.torsion_num.iter().map(|t| t.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.index,
            r.parameter.n,
            partition.join("+"),
            r.parameter.torsion_level,
            torsion.join("+"),
            r.valid,
            r.discrete,
            r.centralizer_dim
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// galois-check
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct GaloisCheckRow {
    pub parameter: ParameterWire,
    pub label: String,
    pub gamma_level: u32,
    pub gamma_exponent: u32,
    /// Standardness at parameter level: the twist is again a valid parameter.
    pub validity_preserved: bool,
    /// The discreteness criterion agrees before and after twisting.
    pub discreteness_preserved: bool,
    /// Orbit of the twisted point equals the twisted orbit.
    pub central_character_compatible: bool,
    /// Monomial regularity of the adjoint projection (both sides agree).
    pub regular: bool,
    /// Essential square-integrability of the input parameter; the numeric
    /// formal-degree comparison is a theorem only in this case.
    pub discrete: bool,
    /// Exact termwise identity of the truncated |M|^2 sums; None when the
    /// parameter is non-regular on both sides (the sums are undefined).
    pub termwise_exact_equal: Option<bool>,
    /// Max over the q0 list of |d(s) - d(gamma s)|; None when non-regular.
    /// Advisory for non-discrete parameters: the twisted parameter is then a
    /// genuinely different point and the truncated sums need not agree.
    pub numeric_degree_diff: Option<f64>,
    pub numeric_degree_diff_decimal: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisCheckReport {
    pub schema_version: &'static str,
    pub config: CampaignConfig,
    pub rows: Vec<GaloisCheckRow>,
    pub all_ok: bool,
}

/// Shared per-size data for a campaign: the adjoint datum, its Weyl group and
/// dominant-weight table, and the GL_n Weyl group for orbit computations.
struct CheckContext {
    rd: RootDatum,
    wg: WeylGroup,
    gl_wg: WeylGroup,
    weights: Vec<DominantWeight>,
}

impl CheckContext {
    fn new(n: usize, height_bound: i64) -> Result<Self> {
        let rd = adjoint_datum(n)?;
        let wg = WeylGroup::new(&rd)?;
        let weights = rd.enumerate_dominant(height_bound)?;
        let gl_wg = WeylGroup::new(&RootDatum::general_linear(n)?)?;
        Ok(CheckContext { rd, wg, gl_wg, weights })
    }
}

/// All verdict rows for one parameter (one row per Galois automorphism).
fn galois_check_parameter(
    config: &CampaignConfig,
    ctx: &CheckContext,
    q0s: &[Rat],
    p: &KLParameter,
    gammas: &[GaloisAutomorphism],
) -> Result<Vec<GaloisCheckRow>> {
    let s = adjoint_point(p)?;
    let regular_base = s.is_regular(&ctx.rd)?;
    let base = if regular_base {
        Some(SumData::compute(&ctx.rd, &ctx.wg, &s, &ctx.weights)?)
    } else {
        None
    };
    let base_inverses: Vec<f64> = match &base {
        Some(data) => q0s
            .iter()
            .map(|q0| data.numeric_inverse_at(&ctx.rd, q0))
            .collect::<Result<_>>()?,
        None => vec![],
    };
    let discrete = is_essentially_discrete(p)?;
    let wire = ParameterWire::from_parameter(p);

    let mut rows = Vec::with_capacity(gammas.len());
    for g in gammas {
        let twist = galois_twist_with(g, p, &ctx.gl_wg)?;
        let twisted_s = s.galois(g)?;
        let regular_after = twisted_s.is_regular(&ctx.rd)?;
        let regular = regular_base && regular_after;
        let consistent_regularity = regular_base == regular_after;

        let (termwise, diff) = match &base {
            Some(data) if regular => {
                let twisted_data = SumData::compute(&ctx.rd, &ctx.wg, &twisted_s, &ctx.weights)?;
                let termwise = termwise_plain_equal(&twisted_data, data, g)?;
                let mut max_diff = 0.0f64;
                for (q0, base_inv) in q0s.iter().zip(&base_inverses) {
                    let other = twisted_data.numeric_inverse_at(&ctx.rd, q0)?;
                    let d = (config.rho_dim as f64 / base_inv
                        - config.rho_dim as f64 / other)
                        .abs();
                    max_diff = max_diff.max(d);
                }
                (Some(termwise), Some(max_diff))
            }
            _ => (None, None),
        };

        // Formal-degree equality is asserted by the theorems only for
        // essentially square-integrable parameters; elsewhere the diff is
        // reported but carries no verdict.
        let ok = twist.preserved.all()
            && consistent_regularity
            && termwise.unwrap_or(true)
            && (!discrete || diff.map_or(true, |d| d < config.numeric_tolerance));
        rows.push(GaloisCheckRow {
            parameter: wire.clone(),
            label: p.label(),
            gamma_level: g.level(),
            gamma_exponent: g.exponent(),
            validity_preserved: twist.preserved.validity,
            discreteness_preserved: twist.preserved.discreteness,
            central_character_compatible: twist.preserved.central_character,
            regular,
            discrete,
            termwise_exact_equal: termwise,
            numeric_degree_diff: diff,
            numeric_degree_diff_decimal: diff.map(decimal12),
            ok,
        });
    }
    Ok(rows)
}

pub fn run_galois_check(config: &CampaignConfig) -> Result<GaloisCheckReport> {
    config.validate()?;
    let q0s = config.parse_q0()?;
    let mut rows: Vec<GaloisCheckRow> = Vec::new();
    for &n in &config.sizes {
        let ctx = CheckContext::new(n, config.height_bound)?;
        for &level in &config.torsion_levels {
            let params = enumerate_parameters(n, level)?;
            let gammas = config.gammas_for(level)?;
            // Parameters are processed in a work pool; collection preserves
            // the canonical enumeration order.
            let chunks: Vec<Vec<GaloisCheckRow>> = params
                .par_iter()
                .map(|p| galois_check_parameter(config, &ctx, &q0s, p, &gammas))
                .collect::<Result<Vec<_>>>()?;
            rows.extend(chunks.into_iter().flatten());
        }
    }
    let all_ok = rows.iter().all(|r| r.ok);
    Ok(GaloisCheckReport { schema_version: SCHEMA_VERSION, config: config.clone(), rows, all_ok })
}

// ---------------------------------------------------------------------------
// degree
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct DegreeDocument {
    pub schema_version: &'static str,
    pub reports: Vec<DegreeEntry>,
    pub all_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeEntry {
    pub q0: String,
    pub report: FormalDegreeReport,
    pub degree_decimal: String,
    /// Independent floating-point recomputation and its relative deviation.
    pub oracle_degree: f64,
    pub oracle_relative_error: f64,
    pub ok: bool,
}

/// Degree reports at each q0, with the float oracle cross-check and optional
/// Galois verdicts folded in.
pub fn run_degree(
    rd: &RootDatum,
    s: &crate::parameters::TorusPoint,
    q0s: &[Rat],
    height_bound: i64,
    rho_dim: u32,
    gammas: &[GaloisAutomorphism],
    numeric_tolerance: f64,
) -> Result<DegreeDocument> {
    let mut reports = Vec::new();
    for q0 in q0s {
        let mut report = degree_numeric(rd, s, q0, height_bound, 1e-6, rho_dim)?;
        for g in gammas {
            let twisted = s.galois(g)?;
            let lhs = plain_m_squared_sum(rd, &twisted, height_bound)?;
            let rhs = plain_m_squared_sum(rd, s, height_bound)?.galois(g)?;
            let other = degree_numeric(rd, &twisted, q0, height_bound, 1e-6, rho_dim)?;
            report.galois_verdicts.push(crate::degree::GaloisVerdict {
                level: g.level(),
                exponent: g.exponent(),
                termwise_exact_equal: lhs == rhs,
                numeric_degree_diff: (report.degree_numeric - other.degree_numeric).abs(),
            });
        }
        let oracle = float_oracle_degree(rd, s, q0, height_bound)? * rho_dim as f64;
        let rel = (report.degree_numeric - oracle).abs() / oracle.abs().max(f64::MIN_POSITIVE);
        let ok = rel < 1e-9
            && report
                .galois_verdicts
                .iter()
                .all(|v| v.termwise_exact_equal && v.numeric_degree_diff < numeric_tolerance);
        reports.push(DegreeEntry {
            q0: q0.to_string(),
            degree_decimal: decimal12(report.degree_numeric),
            oracle_degree: oracle,
            oracle_relative_error: rel,
            ok,
            report,
        });
    }
    let all_ok = reports.iter().all(|r| r.ok);
    Ok(DegreeDocument { schema_version: SCHEMA_VERSION, reports, all_ok })
}

// ---------------------------------------------------------------------------
// hecke-verify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct HeckeVerifyDocument {
    pub schema_version: &'static str,
    pub report: RelationReport,
    pub all_ok: bool,
}

pub fn run_hecke_verify(rd: &RootDatum, length_bound: i64) -> Result<HeckeVerifyDocument> {
    let report = verify_relations(rd, length_bound)?;
    let all_ok = report.all_pass();
    Ok(HeckeVerifyDocument { schema_version: SCHEMA_VERSION, report, all_ok })
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ExportEntry {
    pub parameter: ParameterWire,
    pub label: String,
    pub valid: bool,
    pub centralizer_dim: usize,
    pub discrete: bool,
    pub central_character_orbit: crate::parameters::TorusPoint,
    /// Exact truncated inverse-degree sum of the adjoint projection, when the
    /// parameter is regular.
    pub partial_inverse_degree: Option<RatFun>,
    pub degree_numeric: Option<f64>,
    pub degree_decimal: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportDocument {
    pub schema_version: &'static str,
    pub config: CampaignConfig,
    pub entries: Vec<ExportEntry>,
}

pub fn run_export(config: &CampaignConfig) -> Result<ExportDocument> {
    config.validate()?;
    let q0s = config.parse_q0()?;
    let q0 = &q0s[0];
    let mut entries = Vec::new();
    for &n in &config.sizes {
        for &level in &config.torsion_levels {
            let rd_gl = RootDatum::general_linear(n)?;
            let alg = HeckeAlgebra::new(&rd_gl)?;
            for p in enumerate_parameters(n, level)? {
                let (rd, s) = adjoint_projection(&p)?;
                let (inverse, numeric) = if s.is_regular(&rd)? {
                    let report =
                        degree_numeric(&rd, &s, q0, config.height_bound, 1e-6, config.rho_dim)?;
                    (Some(report.partial_inverse_degree.clone()), Some(report.degree_numeric))
                } else {
                    (None, None)
                };
                entries.push(ExportEntry {
                    label: p.label(),
                    valid: p.is_valid(),
                    centralizer_dim: centralizer_dimension(&p)?,
                    discrete: is_essentially_discrete(&p)?,
                    central_character_orbit: alg
                        .central_character_orbit(p.torus_point())
                        .representative()
                        .clone(),
                    parameter: ParameterWire::from_parameter(&p),
                    partial_inverse_degree: inverse,
                    degree_numeric: numeric,
                    degree_decimal: numeric.map(decimal12),
                });
            }
        }
    }
    Ok(ExportDocument { schema_version: SCHEMA_VERSION, config: config.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> CampaignConfig {
        CampaignConfig {
            sizes: vec![2],
            torsion_levels: vec![3],
            gammas: None,
            height_bound: 8,
            q0: vec!["2/1".into()],
            numeric_tolerance: 1e-8,
            rho_dim: 1,
        }
    }

    #[test]
    fn enumerate_table_gl2_level1() {
        let table = run_enumerate(2, 1).unwrap();
        assert_eq!(table.rows.len(), 2);
        let discrete: Vec<bool> = table.rows.iter().map(|r| r.discrete).collect();
        // p = (2) is discrete, p = (1,1) is not.
        assert_eq!(discrete, vec![true, false]);
        let csv = enumerate_to_csv(&table);
        assert!(csv.contains("0,2,2,1,0+0,true,true,1"));
        assert!(csv.contains("1,2,1+1,1,0+0,true,false,4"));
    }

    #[test]
    fn galois_check_small_campaign() {
        let report = run_galois_check(&small_config()).unwrap();
        assert!(report.all_ok);
        // level 3: two automorphisms per parameter; 3 + 6 parameters.
        assert_eq!(report.rows.len(), (3 + 6) * 2);
        // Determinism: identical config gives byte-identical output.
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&run_galois_check(&small_config()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guard_errors_are_rejected_before_execution() {
        let mut config = small_config();
        config.sizes = vec![9];
        assert!(matches!(config.validate(), Err(Error::SizeGuardExceeded { .. })));
        let mut config = small_config();
        config.q0 = vec!["1/1".into()];
        assert!(config.validate().is_err());
        let mut config = small_config();
        config.gammas = Some(vec![3]); // not coprime to 3
        assert!(config.validate().is_err());
    }

    #[test]
    fn export_contains_exact_values() {
        let config = small_config();
        let doc = run_export(&config).unwrap();
        assert_eq!(doc.entries.len(), 9);
        assert!(doc.entries.iter().any(|e| e.partial_inverse_degree.is_some()));
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("schema_version"));
    }
}
