//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mixmult::fixtures::Builtin;
use mixmult::model::parse_model;
use mixmult_core::filterreg::{
    colon_vanishes_on_window, cut, explore_maximal_lengths, is_filter_regular,
    length_drop_mismatches, positivity_certificate, stabilization_index, verify_sequence,
    FilterRegOptions, SequenceCheck, Verdict,
};
use mixmult_core::hilbert::{
    analyze, brute_force_count, graded_count, vanishing_test, GradedQuotient, HilbertOptions,
};
use mixmult_core::idealmm::{
    bhattacharya_table, direct_colength, t_length, theorem45_check, validate_system, IdealOptions,
    IdealSystem,
};
use mixmult_core::kernel::{BlockRingSpec, Monomial, MonomialIdeal, MultiDegree, Var};
use mixmult_core::poly::{factorial, rational_to_string};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;
type SystemCase<'a> = (&'a IdealSystem, &'a [u32], Vec<(Var, usize)>);

fn example37() -> GradedQuotient {
    let model = parse_model(&Builtin::Example37.source()).unwrap();
    GradedQuotient::new(model.ring.clone(), model.ideal("I").unwrap().clone()).unwrap()
}

fn example36(t: u32) -> GradedQuotient {
    let model = parse_model(&Builtin::Example36 { t }.source()).unwrap();
    GradedQuotient::new(model.ring.clone(), model.ideal("I").unwrap().clone()).unwrap()
}

fn vars(m: &GradedQuotient, names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| m.spec().var(n).unwrap()).collect()
}

fn example36_sequence(m: &GradedQuotient, t: u32) -> Vec<Var> {
    let names: Vec<String> = (1..t).map(|i| format!("X{i}")).collect();
    names.iter().map(|n| m.spec().var(n).unwrap()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random block ring with at most `max_vars` variables and a monomial ideal
/// with at most `max_gens` generators of exponent at most `max_exp`.
fn random_quotient(rng: &mut ChaCha8Rng, max_vars: usize, max_gens: usize, max_exp: u32) -> GradedQuotient {
    let mut sizes = Vec::new();
    let mut total = 0;
    let blocks = rng.gen_range(1..=3);
    for _ in 0..blocks {
        if total == max_vars {
            break;
        }
        let k = rng.gen_range(1..=(max_vars - total).min(3));
        sizes.push(k);
        total += k;
    }
    let letters = ['x', 'y', 'z'];
    let names: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(b, &k)| (1..=k).map(|i| format!("{}{i}", letters[b])).collect())
        .collect();
    let spec = Arc::new(BlockRingSpec::new(names).unwrap());
    let gens: Vec<Monomial> = (0..rng.gen_range(0..=max_gens))
        .map(|_| Monomial::from_exponents((0..total).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect();
    GradedQuotient::new(spec.clone(), MonomialIdeal::new(total, gens)).unwrap()
}

fn grid(d: usize, top: u32) -> Vec<Vec<u32>> {
    let mut points = vec![Vec::new()];
    for _ in 0..d {
        points = points
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=top).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    points
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let a = analyze(&example37(), &HilbertOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(a.profile.ell == 5, || format!("ℓ = {}", a.profile.ell))?;
    ensure(a.polynomial.total_degree() == Some(4), || format!("degree {:?}", a.polynomial.total_degree()))?;
    let ones = [vec![2, 2, 0], vec![2, 0, 2], vec![0, 2, 2]];
    let zeros = [
        [4, 0, 0], [0, 4, 0], [0, 0, 4], [3, 1, 0], [1, 3, 0], [3, 0, 1],
        [1, 0, 3], [0, 3, 1], [0, 1, 3], [2, 1, 1], [1, 2, 1], [1, 1, 2],
    ];
    ensure(a.table.entries().len() == 15, || format!("{} entries", a.table.entries().len()))?;
    for k in &ones {
        ensure(a.table.get(k) == Some(&BigUint::from(1u32)), || format!("e{k:?} = {:?}", a.table.get(k)))?;
    }
    for k in &zeros {
        ensure(a.table.get(k) == Some(&BigUint::from(0u32)), || format!("e{k:?} = {:?}", a.table.get(k)))?;
    }
    ensure(a.table.sum() == BigUint::from(3u32), || format!("Σ = {}", a.table.sum()))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("ℓ = 5, degree 4, Σ = 3 in {:.2?}", elapsed))
}

fn verified(m: &GradedQuotient, seq: &[Var]) -> Result<GradedQuotient, String> {
    match verify_sequence(m, seq).map_err(|e| e.to_string())? {
        SequenceCheck::Verified(cert) => Ok(cert.final_quotient),
        other => Err(format!("{other:?}")),
    }
}

fn criterion2() -> Outcome {
    let m = example37();
    let opts = HilbertOptions::default();
    let last = verified(&m, &vars(&m, &["x3", "x2", "y3", "y2"]))?;
    let stab = stabilization_index(&last, &opts).map_err(|e| e.to_string())?;
    ensure(stab.index == 0 && stab.value == BigUint::from(1u32), || format!("{stab:?}"))?;
    let report = positivity_certificate(&m, &[2, 2, 0], &FilterRegOptions::default()).map_err(|e| e.to_string())?;
    match &report.verdict {
        Verdict::Positive { e, .. } => ensure(e == &report.coefficient_e && e == &BigUint::from(1u32), || format!("e = {e}"))?,
        other => return Err(format!("{other:?}")),
    }
    let short = verified(&m, &vars(&m, &["x3", "x2", "x1"]))?;
    ensure(vanishing_test(&short), || "x3,x2,x1 is not maximal".into())?;
    let found = explore_maximal_lengths(&m, 100_000).map_err(|e| e.to_string())?;
    ensure(found.max() == Some(5) && !found.exhausted, || format!("{:?}", found.lengths()))?;
    Ok(format!(
        "stepwise verified, saturated diagonal length 1 through n = {}, maximal lengths {:?}",
        stab.checked_through,
        found.lengths()
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    for t in 2..=4u32 {
        let m = example36(t);
        let a = analyze(&m, &HilbertOptions::default()).map_err(|e| e.to_string())?;
        let one = BigUint::from(1u32);
        ensure(a.table.get(&[t - 1]) == Some(&one), || format!("t = {t}: coefficient {:?}", a.table.get(&[t - 1])))?;
        let report = positivity_certificate(&m, &[t - 1], &FilterRegOptions::default()).map_err(|e| e.to_string())?;
        match &report.verdict {
            Verdict::Positive { e, stabilization, .. } => ensure(
                e == &one && stabilization.index == 0,
                || format!("t = {t}: e = {e}, r̂ = {}", stabilization.index),
            )?,
            other => return Err(format!("t = {t}: {other:?}")),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("t = 2, 3, 4: e = 1 both ways, r̂ = 0, in {:.2?}", elapsed))
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut points = 0usize;
    for case in 0..500 {
        let m = random_quotient(&mut rng, 6, 6, 3);
        for p in grid(m.num_blocks(), 4) {
            let n = MultiDegree(p);
            let fast = graded_count(&m, &n).map_err(|e| e.to_string())?;
            let slow = brute_force_count(&m, &n).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("case {case} at {n}: {fast} vs {slow}"))?;
            points += 1;
        }
    }
    Ok(format!("500 ideals, {points} multidegrees, 0 mismatches"))
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut pairs, mut regular) = (0, 0);
    while pairs < 200 {
        let m = random_quotient(&mut rng, 6, 4, 2);
        if vanishing_test(&m) {
            continue;
        }
        let x = rng.gen_range(0..m.spec().num_vars());
        let inclusion = is_filter_regular(&m, x).map_err(|e| e.to_string())?;
        let window = colon_vanishes_on_window(&m, x, 1).map_err(|e| e.to_string())?;
        ensure(inclusion == window, || format!("pair {pairs}: inclusion {inclusion}, window {window}"))?;
        regular += usize::from(inclusion);
        pairs += 1;
    }
    Ok(format!("200 pairs ({regular} filter-regular), all agree"))
}

/// Σ e(k) against (ℓ-1)! times the leading coefficient of the diagonal.
fn literal_sum(m: &GradedQuotient) -> Result<(BigUint, BigRational), String> {
    let a = analyze(m, &HilbertOptions::default()).map_err(|e| e.to_string())?;
    let lc = a.profile.poly.leading_coefficient();
    let scale = BigRational::from_integer(BigInt::from(factorial(a.profile.ell - 1)));
    Ok((a.table.sum(), lc * scale))
}

fn criterion6() -> Outcome {
    let check = |label: String, m: &GradedQuotient| -> Result<Option<String>, String> {
        let (sum, scaled) = literal_sum(m)?;
        Ok((BigRational::from_integer(BigInt::from(sum.clone())) != scaled)
            .then(|| format!("{label}: Σ = {sum}, scaled = {}", rational_to_string(&scaled))))
    };
    let mut failures = Vec::new();
    failures.extend(check("example37".into(), &example37())?);
    for t in 2..=4 {
        failures.extend(check(format!("example36 t = {t}"), &example36(t))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut random = 0;
    let mut random_failures = 0;
    while random < 100 {
        let m = random_quotient(&mut rng, 5, 4, 2);
        if vanishing_test(&m) {
            continue;
        }
        if let Some(f) = check(format!("random {random}"), &m)? {
            failures.push(f);
            random_failures += 1;
        }
        random += 1;
    }
    if failures.is_empty() {
        Ok("both fixtures and 100 random quotients".into())
    } else {
        Err(format!(
            "{} mismatches ({random_failures} of 100 random); first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn criterion7() -> Outcome {
    let window = HilbertOptions::default().window;
    let mut steps = 0;
    let mut check = |m: &GradedQuotient, seq: &[Var]| -> Result<(), String> {
        verified(m, seq)?;
        let mut current = m.clone();
        for &x in seq {
            let bad = length_drop_mismatches(&current, x, window).map_err(|e| e.to_string())?;
            ensure(bad.is_empty(), || format!("{} at {}", current.spec().var_name(x), bad[0]))?;
            current = cut(&current, &[x]);
            steps += 1;
        }
        Ok(())
    };
    let m = example37();
    check(&m, &vars(&m, &["x3", "x2", "y3", "y2"]))?;
    check(&m, &vars(&m, &["x3", "x2", "x1"]))?;
    for t in 2..=4 {
        let m = example36(t);
        check(&m, &example36_sequence(&m, t))?;
    }
    Ok(format!("{steps} verified steps, counts match on the validated window"))
}

fn single_block(q: usize) -> Arc<BlockRingSpec> {
    Arc::new(BlockRingSpec::single_block(["x", "y", "z"][..q].to_vec()).unwrap())
}

fn term(spec: &BlockRingSpec, names: &[&str]) -> MonomialIdeal {
    MonomialIdeal::new(spec.num_vars(), names.iter().map(|n| spec.variable(spec.var(n).unwrap())))
}

fn criterion8() -> Outcome {
    let opts = IdealOptions::default();
    let spec = single_block(2);
    let m = term(&spec, &["x", "y"]);
    let equal = validate_system(spec.clone(), m.clone(), vec![m.clone()]).map_err(|e| e.to_string())?;
    let principal = validate_system(spec.clone(), m, vec![term(&spec, &["x"])]).map_err(|e| e.to_string())?;
    let table = |sys: &IdealSystem| -> Result<Vec<u32>, String> {
        let t = bhattacharya_table(sys, &opts).map_err(|e| e.to_string())?;
        Ok([[1, 0], [0, 1]]
            .iter()
            .map(|k| t.get(k).map_or(u32::MAX, |e| u32::try_from(e).unwrap_or(u32::MAX)))
            .collect())
    };
    let (te, tp) = (table(&equal)?, table(&principal)?);
    ensure(te == [1, 1], || format!("(x,y);(x,y) table {te:?}"))?;
    ensure(tp == [1, 0], || format!("(x,y);(x) table {tp:?}"))?;
    let mut points = 0;
    for p in grid(2, 4) {
        let low = direct_colength(&equal, &p, &opts).map_err(|e| e.to_string())?;
        let length = t_length(&equal, &p, &opts).map_err(|e| e.to_string())?;
        let mut up = p.clone();
        up[0] += 1;
        let high = direct_colength(&equal, &up, &opts).map_err(|e| e.to_string())?;
        ensure(&high - &low == length, || format!("telescoping at {p:?}"))?;
        points += 1;
    }
    let x = spec.var("x").unwrap();
    let cases: [SystemCase; 3] = [
        (&equal, &[1, 0], vec![]),
        (&equal, &[0, 1], vec![(x, 1)]),
        (&principal, &[1, 0], vec![]),
    ];
    for (sys, ty, seq) in cases {
        let r = theorem45_check(sys, ty, &seq, &opts).map_err(|e| format!("{} {ty:?}: {e}", sys.format()))?;
        ensure(r.holds(), || format!("{} {ty:?}: {} vs {}", sys.format(), r.table_entry, r.hilbert_samuel.multiplicity))?;
    }
    Ok(format!("tables {{1,1}} and {{1,0}}, telescoping at {points} points, theorem45 holds on 3 cases"))
}

fn binary(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mixmult"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion9() -> Outcome {
    for args in [
        &["mixed-table", "builtin:example37", "--format", "json"][..],
        &["positivity", "builtin:example37", "--format", "json"],
        &["verify", "builtin:example36", "--t", "3", "--format", "json"],
    ] {
        let first = binary(args)?;
        let second = binary(args)?;
        ensure(first == second, || format!("{} differs between runs", args.join(" ")))?;
    }
    let (_, code37) = binary(&["verify", "builtin:example37"])?;
    let (_, code36) = binary(&["verify", "builtin:example36", "--t", "3"])?;
    ensure(code37 == 0 && code36 == 0, || format!("exit codes {code37} and {code36}"))?;
    Ok("json byte-identical across runs; both verify runs exit 0".into())
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("1 fixture table", criterion1),
        ("2 filter-regular facts", criterion2),
        ("3 free ring", criterion3),
        ("4 counting oracle", criterion4),
        ("5 inclusion vs window", criterion5),
        ("6 sum identity", criterion6),
        ("7 length drop identity", criterion7),
        ("8 ideal systems", criterion8),
        ("9 cli determinism", criterion9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
