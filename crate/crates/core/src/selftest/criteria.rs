//! The nine library-level verification suites run by the CLI `selftest`
//! command and by the acceptance test target. Each returns pass/fail plus a
//! deterministic detail string (no timing data, so summaries are
//! byte-stable for a fixed seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{oracles, samplers};
use crate::classify::{class_table, order_class, OrderClass};
use crate::domains::{
    in_extended_tube_s2, in_tube, is_jost_s2, jost_sampling, project_suborder,
};
use crate::geometry::{Configuration, Metric, Statistics, VerdictState};
use crate::hornsat::{minimal_model, HornFormula};
use crate::lorentz::{apply, random_restricted};
use crate::permutation::{
    in_permuted_union_s2, next_permutation, statistics_sign, Permutation,
};
use crate::DEFAULT_EPSILON;

const MARGIN_FILTER: f64 = 1e-6;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Criterion 1: exact reproduction of the classification statements.
pub fn classification_table(_seed: u64, _quick: bool) -> (bool, String) {
    let mut ok = true;

    let s2: Vec<u64> = (2..=40)
        .filter(|&m| order_class(2, m).unwrap() == OrderClass::Intermediate)
        .collect();
    ok &= s2.is_empty();
    ok &= order_class(2, 2).unwrap() == OrderClass::Lower;
    ok &= order_class(2, 3).unwrap() == OrderClass::Lower;
    ok &= order_class(2, 4).unwrap() == OrderClass::High;

    let s3: Vec<u64> = (2..=20)
        .filter(|&m| order_class(3, m).unwrap() == OrderClass::Intermediate)
        .collect();
    ok &= s3 == vec![5];

    let s4: Vec<u64> = (2..=20)
        .filter(|&m| order_class(4, m).unwrap() == OrderClass::Intermediate)
        .collect();
    ok &= s4 == vec![6, 7, 8];

    for s in 2..=64u64 {
        ok &= order_class(s, s + 1).unwrap() == OrderClass::Lower;
        ok &= order_class(s, s * (s - 1) / 2 + 3).unwrap() == OrderClass::High;
    }

    let rows = class_table(2, 5).unwrap();
    ok &= rows.iter().map(|r| r.n).collect::<Vec<_>>() == vec![4, 6, 8, 10];

    (ok, format!("s=2 intermediate {{{}}}, s=3 {{{s3:?}}}, s=4 {{{s4:?}}}", s2.len()))
}

fn sample_exactness_config(rng: &mut ChaCha8Rng) -> Configuration {
    let m = rng.gen_range(2..=5);
    if rng.gen_bool(0.8) {
        samplers::lattice_config(rng, 2, m)
    } else {
        samplers::tube_interior_config(rng, 2, m)
    }
}

/// Criterion 2: the arc decision agrees with the 10^4-angle grid oracle on
/// every sample with angular margin above 1e-6.
pub fn etube_exactness(seed: u64, quick: bool) -> (bool, String) {
    let n = if quick { 1_000 } else { 10_000 };
    let mut rng = stream_rng(seed, 2);
    let mut compared = 0usize;
    let mut disagreements = 0usize;
    let mut min_margin = f64::INFINITY;
    for _ in 0..n {
        let c = sample_exactness_config(&mut rng);
        let exact = in_extended_tube_s2(&c, DEFAULT_EPSILON).unwrap();
        if exact.margin.abs() <= MARGIN_FILTER {
            continue;
        }
        compared += 1;
        min_margin = min_margin.min(exact.margin.abs());
        let grid = oracles::theta_grid(&c, 10_000).unwrap();
        let oracle_inside = grid.admissible_angle.is_some();
        if oracle_inside != (exact.state == VerdictState::Inside) {
            disagreements += 1;
        }
    }
    let pass = disagreements == 0 && compared >= n / 2;
    (
        pass,
        format!("{compared}/{n} compared, {disagreements} disagreements, min |margin| {min_margin:.3e}"),
    )
}

fn sample_chain_config(rng: &mut ChaCha8Rng) -> Configuration {
    let m = rng.gen_range(2..=5);
    match rng.gen_range(0..4) {
        0 | 1 => samplers::lattice_config(rng, 2, m),
        2 => samplers::tube_interior_config(rng, 2, m),
        _ => samplers::jost_real_config(rng, m),
    }
}

/// Criterion 3: tube implies extended tube implies permuted union.
pub fn inclusion_chain(seed: u64, quick: bool) -> (bool, String) {
    let n = if quick { 1_000 } else { 10_000 };
    let mut rng = stream_rng(seed, 3);
    let mut tube_inside = 0usize;
    let mut etube_inside = 0usize;
    let mut violations = 0usize;
    for _ in 0..n {
        let c = sample_chain_config(&mut rng);
        let tube = in_tube(&c, DEFAULT_EPSILON).unwrap();
        let etube = in_extended_tube_s2(&c, DEFAULT_EPSILON).unwrap();
        if tube.state == VerdictState::Inside {
            tube_inside += 1;
            if etube.state != VerdictState::Inside {
                violations += 1;
            }
        }
        if etube.state == VerdictState::Inside {
            etube_inside += 1;
            let union = in_permuted_union_s2(&c, DEFAULT_EPSILON, 8).unwrap();
            if union.state != VerdictState::Inside {
                violations += 1;
            }
        }
    }
    let pass = violations == 0 && tube_inside > 0 && etube_inside > 0;
    (
        pass,
        format!("{n} samples, {tube_inside} tube-inside, {etube_inside} etube-inside, {violations} violations"),
    )
}

/// Criterion 4: every Inside certificate from the populations of criteria 2
/// and 3 re-verifies.
pub fn certificate_soundness(seed: u64, quick: bool) -> (bool, String) {
    let n = if quick { 1_000 } else { 10_000 };
    let mut checked = 0usize;
    let mut failures = 0usize;

    let mut verify_config = |c: &Configuration| {
        let etube = in_extended_tube_s2(c, DEFAULT_EPSILON).unwrap();
        if etube.state == VerdictState::Inside {
            checked += 1;
            if !etube.certificate.unwrap().verify(c, DEFAULT_EPSILON).unwrap() {
                failures += 1;
            }
        }
        let union = in_permuted_union_s2(c, DEFAULT_EPSILON, 8).unwrap();
        if union.state == VerdictState::Inside {
            checked += 1;
            if !union.certificate.unwrap().verify(c, DEFAULT_EPSILON).unwrap() {
                failures += 1;
            }
        }
    };

    let mut rng = stream_rng(seed, 2);
    for _ in 0..n {
        let c = sample_exactness_config(&mut rng);
        verify_config(&c);
    }
    let mut rng = stream_rng(seed, 3);
    for _ in 0..n {
        let c = sample_chain_config(&mut rng);
        verify_config(&c);
    }

    let pass = failures == 0 && checked > 0;
    (pass, format!("{checked} certificates re-verified, {failures} failures"))
}

/// Criterion 5: quadrant test vs arc test on real configurations, with the
/// sampling procedure confirming every Outside and never contradicting an
/// Inside.
pub fn jost_equivalence(seed: u64, quick: bool) -> (bool, String) {
    let n = if quick { 200 } else { 1_000 };
    let samples = if quick { 1_000 } else { 10_000 };
    let mut rng = stream_rng(seed, 5);
    let mut compared = 0usize;
    let mut violations = 0usize;
    for i in 0..n {
        let m = rng.gen_range(2..=5);
        let c = if rng.gen_bool(0.5) {
            samplers::jost_real_config(&mut rng, m)
        } else {
            samplers::lattice_real_config(&mut rng, 2, m)
        };
        let jost = is_jost_s2(&c, DEFAULT_EPSILON).unwrap();
        if jost.margin.abs() <= MARGIN_FILTER {
            continue;
        }
        compared += 1;
        let etube = in_extended_tube_s2(&c, DEFAULT_EPSILON).unwrap();
        if etube.state != jost.state {
            violations += 1;
        }
        let sampling = jost_sampling(&c, samples, seed ^ i as u64, DEFAULT_EPSILON).unwrap();
        let contradiction = match jost.state {
            VerdictState::Inside => sampling.verdict.state == VerdictState::Outside,
            VerdictState::Outside => {
                sampling.verdict.state != VerdictState::Outside || sampling.witness.is_none()
            }
            _ => false,
        };
        if contradiction {
            violations += 1;
        }
    }
    let pass = violations == 0 && compared >= n / 2;
    (pass, format!("{compared}/{n} compared, {violations} violations"))
}

/// Criterion 6: tube verdicts are stable under seeded restricted Lorentz
/// transforms, all of which verify the metric condition below 1e-10.
pub fn lorentz_invariance(seed: u64, quick: bool) -> (bool, String) {
    let n = if quick { 200 } else { 1_000 };
    let mut rng = stream_rng(seed, 6);
    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut max_deviation = 0.0f64;
    for i in 0..n {
        let s = [2, 3, 4][i % 3];
        let g = Metric::new(s).unwrap();
        let m = rng.gen_range(2..=4);
        let c = if rng.gen_bool(0.5) {
            samplers::lattice_config(&mut rng, s, m)
        } else {
            samplers::tube_interior_config(&mut rng, s, m)
        };
        let before = in_tube(&c, DEFAULT_EPSILON).unwrap();
        if before.margin.abs() <= MARGIN_FILTER {
            continue;
        }
        checked += 1;
        let t = random_restricted(&g, rng.gen(), 2.0).unwrap();
        let check = t.verify(&g, 1e-10).unwrap();
        max_deviation = max_deviation.max(check.max_deviation);
        if !check.ok {
            violations += 1;
            continue;
        }
        let after = in_tube(&apply(&t, &c).unwrap(), DEFAULT_EPSILON).unwrap();
        if after.state != before.state {
            violations += 1;
        }
    }
    let pass = violations == 0 && checked >= n / 2;
    (
        pass,
        format!("{checked}/{n} checked, {violations} violations, max deviation {max_deviation:.3e}"),
    )
}

fn clause_alphabet(max_body: usize) -> Vec<(Vec<u32>, Option<u32>)> {
    let atoms = [0u32, 1, 2, 3];
    let mut bodies: Vec<Vec<u32>> = vec![vec![]];
    if max_body >= 1 {
        for &a in &atoms {
            bodies.push(vec![a]);
        }
    }
    if max_body >= 2 {
        for i in 0..4 {
            for j in i + 1..4 {
                bodies.push(vec![atoms[i], atoms[j]]);
            }
        }
    }
    let mut clauses = Vec::new();
    for body in bodies {
        for &head in &atoms {
            clauses.push((body.clone(), Some(head)));
        }
        clauses.push((body, None));
    }
    clauses
}

fn build_formula(clauses: &[&(Vec<u32>, Option<u32>)]) -> HornFormula {
    let mut f = HornFormula::new();
    for i in 0..4 {
        f.atom(&format!("x{i}"));
    }
    for (body, head) in clauses {
        match head {
            Some(h) => f.add_rule(body, *h),
            None => f.add_goal(body),
        }
    }
    f
}

fn check_against_truth_table(f: &HornFormula) -> bool {
    let oracle = oracles::truth_table(f);
    match minimal_model(f) {
        Some(model) => {
            oracle.satisfiable && oracle.satisfies(f, &model) && oracle.is_least(f, &model)
        }
        None => !oracle.satisfiable,
    }
}

/// Criterion 7: exhaustive agreement with truth tables on small formulas
/// plus seeded random formulas up to 15 atoms.
pub fn hornsat_truth_tables(seed: u64, quick: bool) -> (bool, String) {
    let mut checked = 0usize;
    let mut failures = 0usize;

    let wide = clause_alphabet(2);
    for i in 0..wide.len() {
        let f = build_formula(&[&wide[i]]);
        checked += 1;
        if !check_against_truth_table(&f) {
            failures += 1;
        }
        for j in i..wide.len() {
            let f = build_formula(&[&wide[i], &wide[j]]);
            checked += 1;
            if !check_against_truth_table(&f) {
                failures += 1;
            }
        }
    }
    if !quick {
        for i in 0..wide.len() {
            for j in i..wide.len() {
                for k in j..wide.len() {
                    let f = build_formula(&[&wide[i], &wide[j], &wide[k]]);
                    checked += 1;
                    if !check_against_truth_table(&f) {
                        failures += 1;
                    }
                }
            }
        }
    }
    let narrow = clause_alphabet(1);
    for i in 0..narrow.len() {
        for j in i..narrow.len() {
            for k in j..narrow.len() {
                for l in k..narrow.len() {
                    let f = build_formula(&[&narrow[i], &narrow[j], &narrow[k], &narrow[l]]);
                    checked += 1;
                    if !check_against_truth_table(&f) {
                        failures += 1;
                    }
                }
            }
        }
    }

    let random = if quick { 200 } else { 1_000 };
    let mut rng = stream_rng(seed, 7);
    for _ in 0..random {
        let f = random_horn_formula(&mut rng);
        checked += 1;
        if !check_against_truth_table(&f) {
            failures += 1;
        }
    }

    (failures == 0, format!("{checked} formulas checked, {failures} failures"))
}

fn random_horn_formula(rng: &mut ChaCha8Rng) -> HornFormula {
    let n = rng.gen_range(1..=15);
    let mut f = HornFormula::new();
    let atoms: Vec<u32> = (0..n).map(|i| f.atom(&format!("x{i}"))).collect();
    let clauses = rng.gen_range(1..=20);
    for _ in 0..clauses {
        let body_len = rng.gen_range(0..=3.min(n));
        let body: Vec<u32> = (0..body_len).map(|_| atoms[rng.gen_range(0..n)]).collect();
        if rng.gen_bool(0.15) {
            f.add_goal(&body);
        } else {
            let head = atoms[rng.gen_range(0..n)];
            f.add_rule(&body, head);
        }
    }
    f
}

/// Criterion 8: every consecutive suborder projection of an
/// extended-tube-Inside configuration is Inside under the parent's
/// certificate.
pub fn containment_projection(seed: u64, quick: bool) -> (bool, String) {
    let target = if quick { 200 } else { 1_000 };
    let mut rng = stream_rng(seed, 8);
    let mut collected = 0usize;
    let mut attempts = 0usize;
    let mut violations = 0usize;
    while collected < target && attempts < target * 100 {
        attempts += 1;
        let m = rng.gen_range(3..=5);
        let c = match rng.gen_range(0..3) {
            0 => samplers::jost_real_config(&mut rng, m),
            1 => samplers::tube_interior_config(&mut rng, 2, m),
            _ => samplers::lattice_config(&mut rng, 2, m),
        };
        let parent = in_extended_tube_s2(&c, DEFAULT_EPSILON).unwrap();
        if parent.state != VerdictState::Inside {
            continue;
        }
        collected += 1;
        let cert = parent.certificate.unwrap();
        for i in 1..=m - 1 {
            for k in 2..=(m - i + 1) {
                let sub = project_suborder(&c, i, k).unwrap();
                let sv = in_extended_tube_s2(&sub, DEFAULT_EPSILON).unwrap();
                if sv.state != VerdictState::Inside {
                    violations += 1;
                }
                if !cert.verify(&sub, DEFAULT_EPSILON).unwrap() {
                    violations += 1;
                }
            }
        }
    }
    let pass = violations == 0 && collected == target;
    (pass, format!("{collected} inside configurations, {violations} violations"))
}

/// Cone-consistency suite with the production invariant square.
pub fn cone_suite(seed: u64, quick: bool) -> (bool, String) {
    cone_suite_with(seed, quick, |x, g| crate::geometry::real_square(x, g).unwrap())
}

/// Forward-cone consistency checks, parameterized on the invariant-square
/// implementation so test fixtures can inject faults (such as a flipped
/// metric sign) and confirm that the suite reports a failure.
pub fn cone_suite_with(
    seed: u64,
    quick: bool,
    square: impl Fn(&crate::geometry::RealVector, &Metric) -> f64,
) -> (bool, String) {
    use crate::geometry::{in_open_forward_cone, is_spacelike, RealVector};
    let n = if quick { 500 } else { 5_000 };
    let mut rng = stream_rng(seed, 11);
    let mut failures = 0usize;
    for i in 0..n {
        let s = [2, 3, 4][i % 3];
        let g = Metric::new(s).unwrap();
        let x = RealVector::new(
            (0..s).map(|_| rng.gen_range(-10i32..=10) as f64).collect(),
        );
        // signature sum computed inline, independent of the supplied closure
        let expected: f64 = x
            .components()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == 0 { c * c } else { -c * c })
            .sum();
        let got = square(&x, &g);
        if got != expected {
            failures += 1;
            continue;
        }
        let cone = in_open_forward_cone(&x, &g, DEFAULT_EPSILON).unwrap();
        let margin = x.time().min(got);
        if (cone.state == VerdictState::Inside) != (margin > DEFAULT_EPSILON) {
            failures += 1;
        }
        let spacelike = is_spacelike(&x, &g, DEFAULT_EPSILON).unwrap();
        if (spacelike.state == VerdictState::Inside) != (-got > DEFAULT_EPSILON) {
            failures += 1;
        }
        if cone.state == VerdictState::Inside && spacelike.state != VerdictState::Outside {
            failures += 1;
        }
    }
    (failures == 0, format!("{n} vectors checked, {failures} failures"))
}

/// Criterion 9: inversion-counted signs equal brute-force adjacent
/// transposition signs for all permutations with m <= 6 and all flag
/// patterns.
pub fn statistics_signs(_seed: u64, _quick: bool) -> (bool, String) {
    let mut checked = 0usize;
    let mut failures = 0usize;
    for m in 1..=6usize {
        let mut perm: Vec<usize> = (1..=m).collect();
        loop {
            let pi = Permutation::new(perm.clone()).unwrap();
            for pattern in 0..(1u32 << m) {
                let fields: Vec<Statistics> = (0..m)
                    .map(|i| {
                        if pattern >> i & 1 == 1 {
                            Statistics::Fermi
                        } else {
                            Statistics::Bose
                        }
                    })
                    .collect();
                checked += 1;
                let fast = statistics_sign(&fields, &pi).unwrap();
                let slow = oracles::transposition_sign(&fields, &pi);
                if fast != slow {
                    failures += 1;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    (failures == 0, format!("{checked} sign pairs checked, {failures} failures"))
}
