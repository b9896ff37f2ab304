use std::path::Path;

use faithful_core::bounds::{self, f_closed_form, half_beta_bound, mu_lower, remark_bound, BoundsError};
use faithful_core::builder::{
    auto_select_ideal, build_quotient, build_truncation, is_adapted_filiform, prepare, two_step_module,
    BuildError, Construction, QuotientModule,
};
use faithful_core::filiform10::{pipeline, v58_regression, F10Error, FiliformParams, RowStatus};
use faithful_core::lie::{LieAlgebra, LieError, SemidirectData};
use faithful_core::linalg::Subspace;
use faithful_core::pbw::{AdaptedFiltration, PbwError};
use faithful_core::reducer::{exhaustive_minimum, reduce_fully, ReduceError, EXHAUSTIVE_LIMIT};
use serde_json::{json, Value};

use crate::format::{
    parse_algebra, parse_filtration, parse_index_list, parse_rational, AlgebraFile, ParseError,
};
use crate::report;
use crate::CliError;

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new("ParseError", e.to_string()).with_details(json!({"line": e.line, "field": e.field}))
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<PbwError> for CliError {
    fn from(e: PbwError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<F10Error> for CliError {
    fn from(e: F10Error) -> Self {
        let err = CliError::new(e.class(), e.to_string());
        match e {
            F10Error::NotAdmissible(v) => err.with_details(json!({ "violations": v })),
            _ => err,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("IoError", format!("{}: {e}", path.display())))
}

/// Parses an algebra file and checks the Jacobi identity.
fn load_algebra(path: &Path) -> Result<(AlgebraFile, LieAlgebra), CliError> {
    let file = parse_algebra(&read(path)?)?;
    let l = file.to_algebra()?;
    if let Some((i, j, k)) = l.jacobi_violation() {
        return Err(CliError::new(
            "JacobiViolation",
            format!("Jacobi identity fails on (x{}, x{}, x{})", i + 1, j + 1, k + 1),
        )
        .with_details(json!({ "triple": [i + 1, j + 1, k + 1] })));
    }
    Ok((file, l))
}

pub fn check(path: &Path) -> Result<Value, CliError> {
    let (file, l) = load_algebra(path)?;
    let class = l.nilpotency_class().ok();
    Ok(json!({
        "command": "check",
        "input": {"path": path.display().to_string()},
        "algebra": report::algebra(&file),
        "jacobi": true,
        "nilpotent": class.is_some(),
        "class": class,
        "center_dim": l.center().dim(),
        "derived_dim": l.derived().dim(),
        "filiform": l.is_filiform(),
        "mu": report::mu(&mu_lower(&l)),
    }))
}

pub struct BuildOptions {
    pub inner: Option<String>,
    pub ideal: String,
    pub filtration: String,
    pub truncate: Option<u32>,
    pub two_step: bool,
}

fn construction(c: &Construction) -> Value {
    match c {
        Construction::CompatibleQuotient {
            filtration_length,
            ideal_dim,
            level,
        } => {
            json!({"kind": "compatible_quotient", "filtration_length": filtration_length, "ideal_dim": ideal_dim, "level": level})
        }
        Construction::OrderTruncation { threshold } => {
            json!({"kind": "order_truncation", "threshold": threshold})
        }
        Construction::TwoStep { abelian_factor } => {
            json!({"kind": "two_step", "abelian_factor": abelian_factor})
        }
        Construction::Filiform { n, beta } => json!({"kind": "filiform", "n": n, "beta": beta}),
    }
}

/// `⟨x_2, …, x_n⟩` when it is an ideal, otherwise the whole algebra.
fn default_inner(l: &LieAlgebra) -> Vec<usize> {
    let n = l.dim();
    if n >= 2 && l.is_ideal(&Subspace::coordinate(n, 1..n)) {
        (1..n).collect()
    } else {
        (0..n).collect()
    }
}

pub fn build(path: &Path, opts: &BuildOptions) -> Result<Value, CliError> {
    let (file, l) = load_algebra(path)?;
    let n = l.dim();
    let mut input = json!({
        "path": path.display().to_string(),
        "ideal": opts.ideal,
        "filtration": opts.filtration,
        "truncate": opts.truncate,
        "two_step": opts.two_step,
    });
    let mut extra = json!({});
    let module: QuotientModule = if opts.two_step {
        two_step_module(&l)?
    } else {
        let inner = match &opts.inner {
            Some(s) => parse_index_list(s, n).map_err(|m| CliError::usage(format!("--inner: {m}")))?,
            None => default_inner(&l),
        };
        if inner.is_empty() {
            return Err(CliError::usage("--inner: empty index list"));
        }
        input["inner"] = json!(inner.iter().map(|i| i + 1).collect::<Vec<_>>());
        let semi = if inner.len() == n && inner.iter().enumerate().all(|(p, &i)| p == i) {
            SemidirectData::whole(&l)
        } else {
            SemidirectData::decompose(&l, &inner)?
        };
        if opts.truncate.is_some() || opts.ideal == "none" {
            build_truncation(semi, opts.truncate)?
        } else {
            let filtration = match opts.filtration.as_str() {
                "lcs" => AdaptedFiltration::inherited(&semi)?,
                "inner-lcs" => AdaptedFiltration::lower_central(&semi.inner)?,
                other => match other.strip_prefix("file:") {
                    Some(p) => {
                        let terms = parse_filtration(&read(Path::new(p))?, &inner)?;
                        AdaptedFiltration::from_terms(&semi.inner, terms)?
                    }
                    None => return Err(CliError::usage(format!("--filtration: unknown value '{other}'"))),
                },
            };
            let (ctx, ideal) = if opts.ideal == "auto" {
                auto_select_ideal(semi, filtration)?
            } else if let Some(k) = opts.ideal.strip_prefix("m=") {
                let m: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| CliError::usage(format!("--ideal: not an index: '{k}'")))?;
                if !(1..=n).contains(&m) {
                    return Err(CliError::usage(format!("--ideal: index {m} out of range 1..{n}")));
                }
                let coords: Vec<usize> = (0..inner.len()).filter(|&p| inner[p] + 1 >= m).collect();
                let j = Subspace::coordinate(inner.len(), coords);
                let filiform_suffix =
                    is_adapted_filiform(&l) && inner == (1..n).collect::<Vec<_>>() && m >= 2;
                if filiform_suffix {
                    let beta = n - m + 1;
                    extra["filiform_dimension"] = json!({
                        "n": n,
                        "beta": beta,
                        "f": bounds::f(n as u64, beta as u64)?.to_string(),
                    });
                }
                prepare(semi, filtration, &j)?
            } else {
                return Err(CliError::usage(format!(
                    "--ideal: unknown value '{}'",
                    opts.ideal
                )));
            };
            extra["ideal"] = json!({
                "dim": ideal.dim,
                "level": ideal.level,
                "basis": ctx.labels()[ideal.suffix_start..].to_vec(),
            });
            build_quotient(&ctx, &ideal)?
        }
    };
    if let Some(fd) = extra.get_mut("filiform_dimension") {
        let matches = fd["f"] == json!(module.dim().to_string());
        fd["matches"] = json!(matches);
    }
    let mu = mu_lower(&l);
    let mut out = json!({
        "command": "build",
        "input": input,
        "algebra": report::algebra(&file),
        "construction": construction(&module.construction),
        "module": report::module(&module.names, &module.representation),
        "verification": report::verification(&l, &module.representation),
        "mu": report::mu(&mu),
    });
    for (k, v) in extra.as_object().expect("object") {
        out[k] = v.clone();
    }
    Ok(out)
}

pub fn reduce(path: &Path, exhaustive: bool) -> Result<Value, CliError> {
    let doc: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::new("ParseError", format!("{}: {e}", path.display())))?;
    let bad = |m: String| CliError::new("ParseError", m);
    let file = report::algebra_from_json(
        doc.get("algebra")
            .ok_or_else(|| bad("missing 'algebra'".into()))?,
    )
    .map_err(bad)?;
    let (names, rho) =
        report::module_from_json(doc.get("module").ok_or_else(|| bad("missing 'module'".into()))?)
            .map_err(bad)?;
    let l = file.to_algebra()?;
    if rho.algebra_dim() != l.dim() {
        return Err(CliError::new(
            "ShapeMismatch",
            format!(
                "module has {} matrices for an algebra of dimension {}",
                rho.algebra_dim(),
                l.dim()
            ),
        ));
    }
    let chain = reduce_fully(&l, &rho)?;
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|s| {
            json!({
                "dim": s.representation.dim(),
                "invariant_dim": s.invariant_dim,
                "complement_dim": s.complement_dim,
            })
        })
        .collect();
    let final_names: Vec<String> = chain
        .final_indices()
        .into_iter()
        .map(|i| names[i].clone())
        .collect();
    let mut out = json!({
        "command": "reduce",
        "input": {"path": path.display().to_string()},
        "algebra": report::algebra(&file),
        "steps": steps,
        "dims": chain.dims(),
        "final_invariant_dim": chain.final_invariant_dim,
        "module": report::module(&final_names, &chain.final_module),
        "verification": report::verification(&l, &chain.final_module),
    });
    if exhaustive {
        out["exhaustive_minimum"] = if rho.dim() <= EXHAUSTIVE_LIMIT {
            json!(exhaustive_minimum(&l, &rho)?)
        } else {
            Value::Null
        };
    }
    Ok(out)
}

pub fn filiform10(params: &str) -> Result<Value, CliError> {
    let values: Vec<&str> = params.split(',').map(str::trim).collect();
    if values.len() != 13 {
        return Err(CliError::usage(format!(
            "--params expects 13 comma-separated rationals, got {}",
            values.len()
        )));
    }
    let alpha = values
        .iter()
        .map(|v| parse_rational(v))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|m| CliError::usage(format!("--params: {m}")))?;
    let p = FiliformParams::from_slice(&alpha)?;
    let result = pipeline(&p)?;
    let regression = v58_regression(&result.v58);
    let mismatches: Vec<Value> = regression
        .mismatches()
        .map(|r| json!({"generator": r.generator, "source": r.source}))
        .collect();
    Ok(json!({
        "command": "filiform10",
        "params": alpha.iter().map(report::rational).collect::<Vec<_>>(),
        "admissible": true,
        "case": result.case.as_str(),
        "regression": {
            "match": regression.count(RowStatus::Match),
            "match_up_to_sign": regression.count(RowStatus::MatchUpToSign),
            "mismatch": regression.count(RowStatus::Mismatch),
            "mismatches": mismatches,
        },
        "pipeline": {
            "dims": result.chain.dims(),
            "invariant_dims": result.chain.invariant_dims(),
            "final_dim": result.final_dim,
            "final_basis": result.final_indices_names(),
            "verification": report::verification(&result.v58.algebra, &result.chain.final_module),
        },
        "mu": report::mu(&result.mu),
    }))
}

pub fn bounds(n: u64, beta: Option<i64>) -> Result<Value, CliError> {
    let betas: Vec<u64> = match beta {
        Some(b) if b < 0 => {
            return Err(BoundsError::BetaOutOfRange {
                beta: 0,
                max: n.saturating_sub(1),
            }
            .into())
        }
        Some(b) => vec![b as u64],
        None => (1..n.max(1)).collect(),
    };
    let mut rows = Vec::new();
    for b in betas {
        let f = bounds::f(n, b)?;
        let closed = f_closed_form(n, b);
        rows.push(json!({
            "beta": b,
            "f": f.to_string(),
            "closed_form": closed.as_ref().map(|c| c.to_string()),
            "closed_form_matches": closed.map(|c| c == f),
            "remark_bound": remark_bound(n, b)?.to_string(),
        }));
    }
    if rows.is_empty() {
        return Err(BoundsError::DimensionOutOfRange(n).into());
    }
    Ok(json!({
        "command": "bounds",
        "n": n,
        "rows": rows,
        "half_beta_bound": half_beta_bound(n)?.to_string(),
        "monotone": bounds::is_monotone(n)?,
    }))
}
