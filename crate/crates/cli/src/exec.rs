//! Subcommand execution: one function per command, each resolving a
//! [`RunConfig`] into a [`Table`]. All computation lives in the library;
//! this layer only wires flags to calls and rows to cells.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::Value;

use cfdim_core::cf;
use cfdim_core::compsum::{
    composition_sum, generalized_bound_constant, lemma_bound, verify_lemma,
    CompositionSumQuery, LemmaGrid, LemmaReport, RationalParam,
};
use cfdim_core::constructions::{
    check_b_assumptions, digit_window, membership_diagnostics, n_zero, sample_mu, stream_a,
    stream_b, stream_em, stream_f, CoefFn, DigitStream, WindowSpec,
};
use cfdim_core::dimension::{
    cover_sum_terms, figure1_data, finite_depth_dimension, local_dimension_profile, profile_limit,
    solve_sl, CoverScheme, ProfileQuery,
};
use cfdim_core::ifs::{
    build_affine, gauss_as_ddecaying, predicted_dimension, project, symbolic_expand,
    verify_generalized_lemma, DDecayingSystem, ExpandPoint, DEFAULT_IFS_PRECISION,
};
use cfdim_core::khintchine::khintchine_mc;
use cfdim_core::{Error, Result};

use crate::args::*;
use crate::output::{
    cell_bigint, cell_biguint, cell_bool, cell_f64, cell_rational, cell_str, cell_u64,
    rational_f64, Table,
};

/// Run the command of a validated config and collect its output table.
pub fn execute(config: &RunConfig) -> Result<Table> {
    match &config.command {
        Command::Expand(args) => run_expand(args),
        Command::Cylinder(args) => run_cylinder(args),
        Command::LemmaVerify(args) => run_lemma_verify(args),
        Command::Construct(cmd) => run_construct(cmd),
        Command::Diagnose(cmd) => run_diagnose(cmd),
        Command::CoverSum(args) => run_cover_sum(args),
        Command::SolveSl(args) => run_solve_sl(args),
        Command::Profile(args) => run_profile(args),
        Command::DimensionEstimate(args) => run_dimension_estimate(args),
        Command::Figure1(args) => run_figure1(args),
        Command::Ifs(cmd) => run_ifs(cmd),
        Command::Khintchine(args) => run_khintchine(args),
    }
}

// ---------------------------------------------------------------------------
// expand / cylinder
// ---------------------------------------------------------------------------

fn run_expand(args: &ExpandArgs) -> Result<Table> {
    let (word, terminated) = cf::expand_rational(&args.x.0, args.depth as usize)?;
    let stats = cf::stats(&word);
    let mut table = Table::new("expand", vec!["k", "a_k", "s_k", "t_k"]);
    let suffix = if terminated { " (terminated)" } else { "" };
    table.note("expansion", cell_str(format!("{word}{suffix}")));
    table.note("digits", cell_u64(word.len() as u64));
    table.note("terminated", cell_bool(terminated));
    for (i, digit) in word.digits().iter().enumerate() {
        table.push_row(vec![
            cell_u64(i as u64 + 1),
            cell_biguint(digit),
            cell_biguint(&stats.sums[i]),
            cell_biguint(&stats.maxima[i]),
        ]);
    }
    Ok(table)
}

fn run_cylinder(args: &CylinderArgs) -> Result<Table> {
    let word = args.word.to_word()?;
    let cyl = cf::cylinder(&word);
    let convergents = cf::convergents(&word);
    let length = cyl.length();
    let mut table = Table::new("cylinder", vec!["k", "a_k", "p_k", "q_k"]);
    table.note("left", cell_rational(&cyl.left));
    table.note("right", cell_rational(&cyl.right));
    table.note("length", cell_rational(&length));
    table.note("length_decimal", cell_f64(rational_f64(&length)));
    table.note("midpoint", cell_rational(&cyl.midpoint()));
    for (i, ((p, q), digit)) in convergents.iter().zip(word.digits()).enumerate() {
        table.push_row(vec![
            cell_u64(i as u64 + 1),
            cell_biguint(digit),
            cell_bigint(p),
            cell_bigint(q),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// lemma-verify
// ---------------------------------------------------------------------------

fn run_lemma_verify(args: &LemmaVerifyArgs) -> Result<Table> {
    if let (Some(m), Some(n)) = (args.m, args.n) {
        return run_lemma_point(args, m, n);
    }
    let (m_max, n_max) = (
        args.m_max.ok_or_else(|| Error::Domain("grid mode needs --m-max".into()))?,
        args.n_max.ok_or_else(|| Error::Domain("grid mode needs --n-max".into()))?,
    );
    let s_values: Vec<RationalParam> =
        args.s.iter().map(|r| RationalParam(r.0.clone())).collect();
    let report: LemmaReport = match &args.d {
        Some(d) => verify_generalized_lemma(&d.0, &s_values, m_max, n_max)?,
        None => verify_lemma(&LemmaGrid { m_max, n_max, s_values })?,
    };
    let mut table = Table::new("lemma-verify", vec!["n", "m", "s"]);
    table.note("mode", cell_str("grid"));
    table.note(
        "bound",
        cell_str(if args.d.is_some() { "generalized" } else { "standard" }),
    );
    table.note("points_checked", cell_u64(report.points_checked));
    table.note("violations", cell_u64(report.violations.len() as u64));
    table.note("max_ratio", cell_f64(report.max_ratio));
    for v in &report.violations {
        table.push_row(vec![cell_u64(v.n), cell_u64(v.m), cell_rational(&v.s)]);
    }
    Ok(table)
}

/// One `(m, n)` point: the certified enclosures behind each grid decision,
/// one row per `s` (`t = d s`, `d` defaulting to 2).
fn run_lemma_point(args: &LemmaVerifyArgs, m: u64, n: u64) -> Result<Table> {
    let d = args
        .d
        .as_ref()
        .map(|r| r.0.clone())
        .unwrap_or_else(|| BigRational::from_integer(2.into()));
    let prec = args.precision;
    let mut table = Table::new(
        "lemma-verify",
        vec![
            "s",
            "t",
            "c_t",
            "lhs",
            "lhs_radius",
            "rhs",
            "rhs_radius",
            "ratio",
            "ratio_radius",
        ],
    );
    table.note("mode", cell_str("point"));
    table.note("m", cell_u64(m));
    table.note("n", cell_u64(n));
    for s in &args.s {
        let t = &s.0 * &d;
        let query = CompositionSumQuery { m, n, t: t.clone() };
        let c_t = generalized_bound_constant(&t, prec)?;
        let lhs = composition_sum(&query, prec)?;
        let rhs = lemma_bound(&query, prec)?;
        let ratio = lhs.div(&rhs)?;
        table.push_row(vec![
            cell_rational(&s.0),
            cell_rational(&t),
            cell_f64(c_t.to_f64()),
            cell_f64(lhs.to_f64()),
            cell_f64(lhs.radius_f64()),
            cell_f64(rhs.to_f64()),
            cell_f64(rhs.radius_f64()),
            cell_f64(ratio.to_f64()),
            cell_f64(ratio.radius_f64()),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

/// The window spec a digit stream draws from, when the set has one
/// (used to tabulate the admissible range next to each emitted digit).
fn construct_window_spec(cmd: &ConstructCmd) -> Option<WindowSpec> {
    match cmd {
        ConstructCmd::A { params, .. } => Some(WindowSpec {
            gamma: params.gamma.0.clone(),
            lower: CoefFn::Const { value: params.c1.0.clone() },
            upper: CoefFn::Const { value: params.c2.0.clone() },
            start: params.start,
        }),
        ConstructCmd::B { params, .. } => Some(params.to_spec()),
        ConstructCmd::F { params, .. } => Some(WindowSpec {
            gamma: params.gamma.0.clone(),
            lower: CoefFn::AlphaRamp { alpha: params.alpha.0.clone() },
            upper: CoefFn::Const { value: params.alpha.0.clone() },
            start: params.start,
        }),
        ConstructCmd::Em { .. } | ConstructCmd::Mu { .. } => None,
    }
}

fn run_construct(cmd: &ConstructCmd) -> Result<Table> {
    let title = match cmd {
        ConstructCmd::A { .. } => "construct a",
        ConstructCmd::B { .. } => "construct b",
        ConstructCmd::Em { .. } => "construct em",
        ConstructCmd::F { .. } => "construct f",
        ConstructCmd::Mu { .. } => "construct mu",
    };
    match cmd {
        ConstructCmd::Mu { params, count } => {
            let word = sample_mu(
                params.gamma.0.clone(),
                params.c1.0.clone(),
                params.c2.0.clone(),
                params.start,
                *count,
                params.seed,
            )?;
            let stats = cf::stats(&word);
            let mut table = Table::new(title, vec!["n", "a_n", "s_n", "t_n"]);
            table.note("digits", cell_u64(word.len() as u64));
            for (i, digit) in word.digits().iter().enumerate() {
                table.push_row(vec![
                    cell_u64(i as u64 + 1),
                    cell_biguint(digit),
                    cell_biguint(&stats.sums[i]),
                    cell_biguint(&stats.maxima[i]),
                ]);
            }
            Ok(table)
        }
        ConstructCmd::Em { params, count } => {
            let mut stream = stream_em(params.to_spec())?;
            let digits = stream.take_digits(*count)?;
            let prescribed: HashMap<u64, (u64, BigInt)> = stream
                .prescribed()
                .iter()
                .map(|p| (p.index, (p.k, p.floor_term.clone())))
                .collect();
            let mut table = Table::new(
                title,
                vec!["n", "a_n", "s_n", "prescribed", "k", "floor_term"],
            );
            let prescribed_emitted =
                prescribed.keys().filter(|&&idx| idx <= *count).count() as u64;
            table.note("prescribed_count", cell_u64(prescribed_emitted));
            match stream.r_of(*count) {
                Some(r) => {
                    table.note("r_count", cell_u64(r));
                    table.note("r_over_n", cell_f64(r as f64 / *count as f64));
                }
                None => {
                    table.note("r_count", Value::Null);
                    table.note("r_over_n", Value::Null);
                }
            }
            let mut sum = BigUint::from(0u32);
            for (i, digit) in digits.iter().enumerate() {
                let n = i as u64 + 1;
                sum += digit;
                let (is_prescribed, k_cell, floor_cell) = match prescribed.get(&n) {
                    Some((k, floor_term)) => (true, cell_u64(*k), cell_bigint(floor_term)),
                    None => (false, Value::Null, Value::Null),
                };
                table.push_row(vec![
                    cell_u64(n),
                    cell_biguint(digit),
                    cell_biguint(&sum),
                    cell_bool(is_prescribed),
                    k_cell,
                    floor_cell,
                ]);
            }
            Ok(table)
        }
        _ => {
            let spec = construct_window_spec(cmd).expect("a, b, f all have window specs");
            let (mut stream, count): (DigitStream, u64) = match cmd {
                ConstructCmd::A { params, count } => (
                    stream_a(
                        params.gamma.0.clone(),
                        params.c1.0.clone(),
                        params.c2.0.clone(),
                        params.start,
                        params.policy.to_policy(params.seed),
                    )?,
                    *count,
                ),
                ConstructCmd::B { params, count, .. } => (
                    stream_b(params.to_spec(), params.policy.to_policy(params.seed))?,
                    *count,
                ),
                ConstructCmd::F { params, count } => (
                    stream_f(
                        params.gamma.0.clone(),
                        params.alpha.0.clone(),
                        params.start,
                        params.policy.to_policy(params.seed),
                    )?,
                    *count,
                ),
                _ => unreachable!("mu and em handled above"),
            };
            let mut table = Table::new(
                title,
                vec!["n", "a_n", "s_n", "t_n", "window_lo", "window_hi"],
            );
            if let ConstructCmd::A { params, .. } = cmd {
                table.note(
                    "n_zero",
                    cell_u64(n_zero(&params.gamma.0, &params.c1.0, &params.c2.0)?),
                );
            }
            if let ConstructCmd::B { params, check_horizon, .. } = cmd {
                if *check_horizon > 0 {
                    let report = check_b_assumptions(&params.to_spec(), *check_horizon)?;
                    table.note("check_all_pass", cell_bool(report.all_pass));
                    table.note("diff_decay_last", cell_f64(report.diff_decay.last));
                    table.note("lower_log_ratio_last", cell_f64(report.lower_log_ratio.last));
                    table.note("upper_log_ratio_last", cell_f64(report.upper_log_ratio.last));
                }
            }
            let mut sum = BigUint::from(0u32);
            let mut max = BigUint::from(0u32);
            for n in 1..=count {
                let digit = stream.next_digit()?;
                sum += &digit;
                if digit > max {
                    max = digit.clone();
                }
                let (lo_cell, hi_cell) = if n >= spec.start {
                    let window = digit_window(&spec, n)?;
                    (cell_biguint(&window.lo), cell_biguint(&window.hi))
                } else {
                    (Value::Null, Value::Null)
                };
                table.push_row(vec![
                    cell_u64(n),
                    cell_biguint(&digit),
                    cell_biguint(&sum),
                    cell_biguint(&max),
                    lo_cell,
                    hi_cell,
                ]);
            }
            Ok(table)
        }
    }
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

fn run_diagnose(cmd: &DiagnoseCmd) -> Result<Table> {
    let (title, mut stream, phi, t_gamma, depths) = match cmd {
        DiagnoseCmd::A { params, diag } => (
            "diagnose a",
            stream_a(
                params.gamma.0.clone(),
                params.c1.0.clone(),
                params.c2.0.clone(),
                params.start,
                params.policy.to_policy(params.seed),
            )?,
            diag.phi.clone(),
            diag.t_gamma.clone(),
            diag.depths.clone(),
        ),
        DiagnoseCmd::B { params, diag } => (
            "diagnose b",
            stream_b(params.to_spec(), params.policy.to_policy(params.seed))?,
            diag.phi.clone(),
            diag.t_gamma.clone(),
            diag.depths.clone(),
        ),
        DiagnoseCmd::Em { params, diag } => (
            "diagnose em",
            stream_em(params.to_spec())?,
            params.phi.clone(),
            diag.t_gamma.clone(),
            diag.depths.clone(),
        ),
        DiagnoseCmd::F { params, diag } => (
            "diagnose f",
            stream_f(
                params.gamma.0.clone(),
                params.alpha.0.clone(),
                params.start,
                params.policy.to_policy(params.seed),
            )?,
            diag.phi.clone(),
            diag.t_gamma.clone(),
            diag.depths.clone(),
        ),
        DiagnoseCmd::Mu { params, diag } => (
            "diagnose mu",
            // The measure sample is a constant-window stream under the
            // per-index random policy; same digits as `construct mu`.
            stream_a(
                params.gamma.0.clone(),
                params.c1.0.clone(),
                params.c2.0.clone(),
                params.start,
                cfdim_core::constructions::WindowPolicy::Random { seed: params.seed },
            )?,
            diag.phi.clone(),
            diag.t_gamma.clone(),
            diag.depths.clone(),
        ),
    };
    let rows = membership_diagnostics(
        &mut stream,
        &phi,
        t_gamma.as_ref().map(|r| &r.0),
        &depths,
    )?;
    let mut table = Table::new(
        title,
        vec!["n", "s_n", "t_n", "s_over_phi", "s_ratio_minus_one", "t_over_exp"],
    );
    table.note("phi", cell_str(phi.to_string()));
    for row in rows {
        table.push_row(vec![
            cell_u64(row.depth),
            cell_str(row.digit_sum),
            cell_str(row.max_digit),
            cell_f64(row.s_over_phi),
            cell_f64(row.s_ratio_minus_one),
            row.t_over_exp.map(cell_f64).unwrap_or(Value::Null),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// cover-sum / solve-sl / profile / dimension-estimate / figure1
// ---------------------------------------------------------------------------

fn run_cover_sum(args: &CoverSumArgs) -> Result<Table> {
    let scheme = CoverScheme {
        gamma: args.gamma.0.clone(),
        epsilon: args.epsilon.0.clone(),
        s: args.s.0.clone(),
        subsequence: args.subsequence.0.clone(),
        k_max: args.k_max,
    };
    let report = cover_sum_terms(&scheme)?;
    let mut table = Table::new(
        "cover-sum",
        vec![
            "ell",
            "n_ell",
            "delta",
            "log_factor",
            "log_factor_radius",
            "running_log_product",
            "running_radius",
        ],
    );
    table.note("log_c", cell_f64(report.log_c));
    table.note("log_r1", cell_f64(report.log_r1));
    table.note("log_r2", cell_f64(report.log_r2));
    table.note("verdict", cell_str(report.verdict.to_string()));
    table.note("certified_from", cell_u64(report.certified_from));
    table.note("tail_window_negative", cell_bool(report.tail_window_negative));
    for row in &report.rows {
        table.push_row(vec![
            cell_u64(row.ell),
            cell_f64(row.n_ell),
            cell_f64(row.delta),
            cell_f64(row.log_factor),
            cell_f64(row.log_factor_radius),
            cell_f64(row.running_log_product),
            cell_f64(row.running_radius),
        ]);
    }
    Ok(table)
}

fn run_solve_sl(args: &SolveSlArgs) -> Result<Table> {
    let mut table = Table::new("solve-sl", vec!["l", "s_lo", "s_hi", "s_mid", "width"]);
    table.note("precision_bits", cell_u64(args.precision_bits as u64));
    for l in &args.l {
        let bracket = solve_sl(&l.0, args.precision_bits)?;
        table.push_row(vec![
            cell_rational(&bracket.l),
            cell_rational(&bracket.lo),
            cell_rational(&bracket.hi),
            cell_f64(bracket.midpoint_f64()),
            cell_f64(rational_f64(&bracket.width())),
        ]);
    }
    Ok(table)
}

fn run_profile(args: &ProfileArgs) -> Result<Table> {
    let query = ProfileQuery {
        growth: args.growth.0.clone(),
        d: args.d.0.clone(),
        n_max: args.n_max,
    };
    let rows = local_dimension_profile(&query)?;
    let mut table = Table::new("profile", vec!["n", "rho", "exact"]);
    match profile_limit(&args.growth.0, &args.d.0) {
        Some(limit) => {
            table.note("limit", cell_rational(&limit));
            table.note("limit_decimal", cell_f64(rational_f64(&limit)));
        }
        None => {
            table.note("limit", Value::Null);
            table.note("limit_decimal", Value::Null);
        }
    }
    for row in rows {
        table.push_row(vec![
            cell_u64(row.n),
            cell_f64(row.value),
            row.exact.map(|e| cell_rational(&e.0)).unwrap_or(Value::Null),
        ]);
    }
    Ok(table)
}

fn run_dimension_estimate(args: &DimensionEstimateArgs) -> Result<Table> {
    if args.depths.is_empty() {
        return Err(Error::Domain("needs at least one depth".into()));
    }
    let spec = args.to_spec();
    let typical = args.to_typical();
    let mut table = Table::new(
        "dimension-estimate",
        vec!["depth", "log_cylinder_count", "neg_log_typical_length", "estimate"],
    );
    for &depth in &args.depths {
        let est = finite_depth_dimension(&spec, depth, &typical)?;
        table.push_row(vec![
            cell_u64(est.depth),
            cell_f64(est.log_cylinder_count),
            cell_f64(est.neg_log_typical_length),
            cell_f64(est.estimate),
        ]);
    }
    Ok(table)
}

fn run_figure1(args: &Figure1Args) -> Result<Table> {
    let grid = args.gamma_grid.values()?;
    let rows = figure1_data(&grid)?;
    let mut table = Table::new(
        "figure1",
        vec!["gamma", "gamma_exact", "family", "dim", "dim_exact", "at_jump"],
    );
    table.note("d", cell_u64(2));
    for row in rows {
        let family = FamilyArg::from_figure1(row.family);
        if !args.families.contains(&family) {
            continue;
        }
        table.push_row(vec![
            cell_f64(rational_f64(&row.gamma)),
            cell_rational(&row.gamma),
            cell_str(row.family.to_string()),
            cell_f64(rational_f64(&row.dim)),
            cell_rational(&row.dim),
            cell_bool(row.at_jump),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// ifs
// ---------------------------------------------------------------------------

fn build_system(sys: &SysArgs) -> Result<DDecayingSystem> {
    match sys.model {
        ModelArg::Affine => {
            let d = sys
                .d
                .as_ref()
                .ok_or_else(|| Error::Domain("--model affine needs --d".into()))?;
            let precision = sys.precision.unwrap_or(DEFAULT_IFS_PRECISION);
            Ok(build_affine(&d.0, precision)?.into_system())
        }
        ModelArg::Gauss => gauss_as_ddecaying(),
    }
}

fn run_ifs(cmd: &IfsCmd) -> Result<Table> {
    match cmd {
        IfsCmd::Build { sys, max_branch, epsilon } => {
            let mut table = Table::new(
                "ifs build",
                vec![
                    "epsilon",
                    "c1",
                    "c2",
                    "lower_scaled_first",
                    "lower_scaled_last",
                    "upper_scaled_first",
                    "upper_scaled_last",
                ],
            );
            let system = match sys.model {
                ModelArg::Affine => {
                    let d = sys
                        .d
                        .as_ref()
                        .ok_or_else(|| Error::Domain("--model affine needs --d".into()))?;
                    let precision = sys.precision.unwrap_or(DEFAULT_IFS_PRECISION);
                    let affine = build_affine(&d.0, precision)?;
                    table.note("zeta_d", cell_f64(affine.zeta_d().to_f64()));
                    table.note("zeta_d_radius", cell_f64(affine.zeta_d().radius_f64()));
                    affine.into_system()
                }
                ModelArg::Gauss => gauss_as_ddecaying()?,
            };
            let eps: Vec<BigRational> = epsilon.iter().map(|r| r.0.clone()).collect();
            let report = system.verify_conditions(*max_branch, &eps)?;
            table.note(
                "model",
                cell_str(match sys.model {
                    ModelArg::Affine => "affine",
                    ModelArg::Gauss => "gauss",
                }),
            );
            table.note("d", cell_rational(system.d()));
            table.note("precision", cell_u64(system.precision()));
            table.note("contraction_step", cell_u64(report.m as u64));
            table.note("contraction_upper", cell_f64(report.contraction_upper));
            table.note("sandwich_checked", cell_u64(report.sandwich_checked));
            table.note("images_checked", cell_u64(report.images_checked));
            table.note("tiling_defect", cell_f64(report.tiling_defect));
            for decay in &report.decay {
                table.push_row(vec![
                    cell_rational(&decay.epsilon.0),
                    cell_f64(decay.c1),
                    cell_f64(decay.c2),
                    cell_f64(decay.lower_scaled_first),
                    cell_f64(decay.lower_scaled_last),
                    cell_f64(decay.upper_scaled_first),
                    cell_f64(decay.upper_scaled_last),
                ]);
            }
            Ok(table)
        }
        IfsCmd::Project { sys, word } => {
            let system = build_system(sys)?;
            let word = word.to_word()?;
            let mut table = Table::new("ifs project", vec!["k", "digit", "value", "radius"]);
            // One row per prefix: the nested images closing in on the point.
            for k in 1..=word.len() {
                let prefix = cfdim_core::cf::DigitWord::new(word.digits()[..k].to_vec())?;
                let value = project(&system, &prefix)?;
                table.push_row(vec![
                    cell_u64(k as u64),
                    cell_biguint(&word.digits()[k - 1]),
                    cell_f64(value.to_f64()),
                    cell_f64(value.radius_f64()),
                ]);
            }
            let full = project(&system, &word)?;
            table.note("value", cell_f64(full.to_f64()));
            table.note("radius", cell_f64(full.radius_f64()));
            table.note("lo", cell_f64(full.lo().to_f64()));
            table.note("hi", cell_f64(full.hi().to_f64()));
            Ok(table)
        }
        IfsCmd::Expand { sys, x, word, depth } => {
            let system = build_system(sys)?;
            let point = match (x, word) {
                (Some(x), None) => ExpandPoint::Rational(x.0.clone()),
                (None, Some(word)) => ExpandPoint::Projected(word.to_word()?),
                _ => {
                    return Err(Error::Domain(
                        "ifs expand takes exactly one of --x or --word".into(),
                    ))
                }
            };
            let expansion = symbolic_expand(&system, &point, *depth)?;
            let mut table = Table::new("ifs expand", vec!["k", "a_k"]);
            table.note("word", cell_str(expansion.to_string()));
            for (i, digit) in expansion.digits().iter().enumerate() {
                table.push_row(vec![cell_u64(i as u64 + 1), cell_biguint(digit)]);
            }
            Ok(table)
        }
        IfsCmd::Predict { sys, phi, n_max } => {
            let system = build_system(sys)?;
            let predicted = predicted_dimension(&system, phi, *n_max)?;
            let mut table = Table::new("ifs predict", vec!["n", "rho", "exact"]);
            table.note("phi", cell_str(phi.to_string()));
            table.note("dim", cell_rational(&predicted.dim));
            table.note("dim_decimal", cell_f64(rational_f64(&predicted.dim)));
            for row in predicted.profile {
                table.push_row(vec![
                    cell_u64(row.n),
                    cell_f64(row.value),
                    row.exact.map(|e| cell_rational(&e.0)).unwrap_or(Value::Null),
                ]);
            }
            Ok(table)
        }
    }
}

// ---------------------------------------------------------------------------
// khintchine
// ---------------------------------------------------------------------------

fn run_khintchine(args: &KhintchineArgs) -> Result<Table> {
    let mut table = Table::new("khintchine", vec!["depth", "q1", "median", "q3"]);
    table.note("samples", cell_u64(args.samples));
    table.note("seed", cell_u64(args.seed));
    // S_n / (n ln n) concentrates at 1 / ln 2 for Lebesgue-typical points.
    table.note("target_decimal", cell_f64(1.0 / std::f64::consts::LN_2));
    for &depth in &args.depth {
        let summary = khintchine_mc(args.samples, depth, args.seed)?;
        table.push_row(vec![
            cell_u64(summary.depth),
            cell_f64(summary.q1),
            cell_f64(summary.median),
            cell_f64(summary.q3),
        ]);
    }
    Ok(table)
}
