//! The acceptance suite: one line per criterion, then a hard assertion.
//! Run with `cargo test --test acceptance -- --nocapture` to see the table.

use std::sync::Arc;
use std::time::{Duration, Instant};

use gsr_core::algebra::GradedAlgebraSpec;
use gsr_core::character::{
    dyn_classify, dyn_extend_orbit, sl2_act, sl2_membership, stabilizer_and_orbit, Character, DynOrbit, ExtendOptions,
    FiniteGroupCharacter, Membership, OrbitClass, Sl2Character, Sl2Kind, Su11Series, WeylCharacter, Witness,
};
use gsr_core::expectation::{conditional_expectation, GroupAlgebraElement};
use gsr_core::group::Subgroup;
use gsr_core::imprimitivity::{build_induced_system, natural_subgroup, round_trip, verify_system};
use gsr_core::induction::{dyn_periodic_rep, induce_character, mackey_cocycle, su2_spin_rep, InducedRep, Label, Window};
use gsr_core::poly::RationalFunction;
use gsr_core::scalar::{q, qi, qr, Q};
use gsr_core::verify::{
    casimir_check, commutant_dimension, decompose_by_commutant, equivalence_check, inducibility_gram, relation_check,
    relation_residual, vir_gram_positivity, well_behaved_check, Convention, Equivalence, Status, DEFAULT_TOLERANCE,
};
use gsr_core::virasoro::{density_rep, fqs_parameters, DensityParams};
use gsr_core::word::{GradedWord, Letter, NCPolynomial};
use gsr_core::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn func(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn orbit(f: &str, seed: Scalar, back: usize, fwd: usize) -> DynOrbit {
    dyn_extend_orbit(&func(f), &seed, &ExtendOptions::steps(back, fwd)).unwrap().remove(0)
}

fn ops(rep: &InducedRep) -> Vec<&gsr_core::matrix::SparseMatrix> {
    rep.ops.values().collect()
}

fn c1_fock() -> Outcome {
    let spec = GradedAlgebraSpec::weyl();
    let mut slowest = Duration::ZERO;
    for lambda in [0i64, 1, 2, 5, 10] {
        let start = Instant::now();
        let o = orbit("t+1", Scalar::int(lambda), 205, lambda as usize + 3);
        let rep = ok(induce_character(&Character::Dyn(o), &spec, Window::new(lambda - 199, lambda + 1)))?;
        ensure!(rep.dim() == 200, "λ={lambda}: dimension {}", rep.dim());
        let astar = ok(rep.letter_matrix(&spec, Letter::starred(0)))?;
        for col in 1..rep.dim() {
            let Label::Int(k) = rep.labels[col] else { return Err("non-integer label".into()) };
            let row = rep.index_of(&Label::Int(k - 1)).ok_or("missing label")?;
            let j = lambda - k; // e_j = label λ − j
            let w = astar.get(row, col);
            ensure!(w.is_exact(), "λ={lambda}: inexact weight at j={j}");
            ensure!(&w * &w == Scalar::int(j + 1), "λ={lambda}: a* weight² at j={j} is {}", &w * &w);
        }
        let r = ok(relation_check(&rep, &spec, DEFAULT_TOLERANCE))?;
        ensure!(r.passed() && r.residual.is_exact() && r.residual.is_zero(), "λ={lambda}: relation residual {}", r.residual);
        slowest = slowest.max(start.elapsed());
    }
    ensure!(slowest < Duration::from_secs(1), "slowest case took {slowest:?}");
    Ok(format!("a* weights √(j+1) exact on 200-dim truncations, relation residual 0; slowest {slowest:.1?}"))
}

fn c2_dichotomy() -> Outcome {
    let spec = GradedAlgebraSpec::weyl();
    let xs: Vec<NCPolynomial> = (0..=5).map(|k| NCPolynomial::word(GradedWord::power(Letter::plain(0), k))).collect();
    let mut verdicts = Vec::new();
    for (n, d) in [(-1, 1), (0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)] {
        let lambda = Scalar::rat(n, d);
        let (g, psd) = ok(inducibility_gram(&WeylCharacter::new(lambda.clone()), &spec, &xs))?;
        ensure!(psd.exact, "λ={lambda}: PSD test not exact");
        let natural = d == 1 && n >= 0;
        ensure!(psd.psd == natural, "λ={lambda}: PSD={} but λ ∈ ℕ₀ is {natural}", psd.psd);
        if n == -1 {
            ensure!(g[1][1] == Scalar::int(-1), "⟨a⊗1,a⊗1⟩ = {} at λ=−1", g[1][1]);
        }
        verdicts.push(format!("{lambda}:{}", if psd.psd { "psd" } else { "not" }));
    }
    Ok(format!("{} ; ⟨a⊗1,a⊗1⟩ = −1 at λ=−1", verdicts.join(" ")))
}

fn spin_reps() -> Vec<(i64, InducedRep)> {
    let spec = GradedAlgebraSpec::su2();
    (0..=6).map(|n| (n, induce_character(&Character::Sl2(Sl2Character::psi(n)), &spec, Window::default()).unwrap())).collect()
}

fn c3_su2() -> Outcome {
    for (n, rep) in spin_reps() {
        ensure!(rep.dim() == (n + 1) as usize, "ψ_{n}: dimension {}", rep.dim());
        let c = ok(commutant_dimension(&ops(&rep)))?;
        ensure!(c.dimension == 1 && c.exact, "ψ_{n}: commutant dimension {} (exact {})", c.dimension, c.exact);
        let spin = su2_spin_rep(n as u32);
        for (name, m) in &rep.ops {
            let s = spin.op(name).map_err(|e| e.to_string())?;
            for i in 0..rep.dim() {
                for j in 0..rep.dim() {
                    let (a, b) = (m.get(i, j), s.get(i, j));
                    ensure!(&a * &a == &b * &b, "ψ_{n}: {name}[{i},{j}]² differs");
                }
            }
        }
        let r = ok(casimir_check(&rep, &Scalar::int(n * (n + 2)), DEFAULT_TOLERANCE))?;
        ensure!(r.passed() && r.residual.is_zero(), "ψ_{n}: Casimir residual {}", r.residual);
    }
    Ok("n = 0..6: dim n+1, commutant 1, squared entries = spin table, Casimir residual 0".into())
}

/// `φ(n) = u + nt − n(n+1)` with `u = (s − t(t−2))/4`: the first zero on the
/// lowering side gives the lower wall, on the raising side the upper.
fn predicted_walls(s: &Q, t: &Q) -> (Option<i64>, Option<i64>) {
    let u = (s - t * (t - q(2))) / q(4);
    let phi = |n: i64| &u + t * q(n) - q(n * (n + 1));
    let lo = (0..200).find(|&j| phi(j) == q(0)).map(|j| -j);
    let hi = (1..200).find(|&j| phi(-j) == q(0)).map(|j| j - 1);
    (lo, hi)
}

fn c4_su11() -> Outcome {
    let spec = GradedAlgebraSpec::su11();
    let samples = [
        ("X00", q(0), q(0), Su11Series::Trivial),
        ("X10", q(-1), q(0), Su11Series::Principal(0)),
        ("X20", q(-1), q(1), Su11Series::Supplementary(0)),
        ("X30", q(3), q(3), Su11Series::Lowest(0)),
        ("X4,-1", q(3), q(-3), Su11Series::Highest(-1)),
    ];
    let mut notes = Vec::new();
    for (name, s, t, series) in samples {
        let c = Sl2Character::new(Sl2Kind::Su11, s.clone(), t.clone());
        ensure!(sl2_membership(&c) == Membership::Yes(Witness::Su11(series)), "{name}: membership {:?}", sl2_membership(&c));
        let rep = ok(induce_character(&Character::Sl2(c.clone()), &spec, "-40:40".parse().unwrap()))?;
        let r = ok(relation_check(&rep, &spec, DEFAULT_TOLERANCE))?;
        ensure!(r.passed() && r.residual.to_f64() < 1e-10, "{name}: relation residual {}", r.residual);
        let cas = ok(casimir_check(&rep, &Scalar::from_q(s.clone()), DEFAULT_TOLERANCE))?;
        ensure!(cas.passed() && cas.residual.to_f64() < 1e-10, "{name}: Casimir residual {}", cas.residual);
        if matches!(series, Su11Series::Lowest(_) | Su11Series::Highest(_)) {
            let (lo, hi) = predicted_walls(&s, &t);
            let labels: Vec<i64> = rep.labels.iter().map(|l| if let Label::Int(k) = l { *k } else { i64::MIN }).collect();
            let (first, last) = (labels[0], *labels.last().unwrap());
            if let Some(lo) = lo {
                ensure!(first == lo && !rep.truncation.cut_lo, "{name}: lower wall {first}, predicted {lo}");
                let f = rep.op("F").unwrap();
                ensure!((0..rep.dim()).all(|i| f.get(i, 0).is_exact() && f.get(i, 0).is_zero()), "{name}: F does not vanish at the wall");
                notes.push(format!("{name} wall {lo}"));
            }
            if let Some(hi) = hi {
                ensure!(last == hi && !rep.truncation.cut_hi, "{name}: upper wall {last}, predicted {hi}");
                let e = rep.op("E").unwrap();
                let j = rep.dim() - 1;
                ensure!((0..rep.dim()).all(|i| e.get(i, j).is_exact() && e.get(i, j).is_zero()), "{name}: E does not vanish at the wall");
                notes.push(format!("{name} wall {hi}"));
            }
            ensure!(lo.is_some() || hi.is_some(), "{name}: no wall predicted");
        }
    }
    Ok(format!("all five series: relation and Casimir residuals 0 on the interior; {}", notes.join(", ")))
}

fn c5_classification() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &str, seed: Scalar, back, fwd| {
        let start = Instant::now();
        let o = orbit(f, seed, back, fwd);
        let class = dyn_classify(&o);
        slowest = slowest.max(start.elapsed());
        (o, class)
    };
    let (_, c1) = timed("t+1", Scalar::int(2), 50, 50);
    ensure!(c1 == OrbitClass::Fock { m: 3 }, "t+1 seed 2: {c1}");
    let (o2, c2) = timed("1-t", Scalar::rat(1, 4), 50, 50);
    ensure!(c2 == OrbitClass::BilateralPeriodic { m: 2 }, "1−t seed 1/4: {c2}");
    let stab = ok(stabilizer_and_orbit(&Character::Dyn(o2), None, 8))?.stabilizer;
    ensure!(stab == Subgroup::multiples(2), "stabilizer {stab}");
    let (o3, c3) = timed("1/2*t + 1", Scalar::zero(), 40, 2);
    let mut partial = Q::from_integer(0.into());
    for j in 1..=30i64 {
        partial += qr(1, 1 << (j - 1));
        let x = ok(o3.x(-j))?;
        ensure!(*x == Scalar::from_q(partial.clone()), "q-oscillator: x_{{-{j}}} = {x}, expected {partial}");
    }
    ensure!(slowest < Duration::from_millis(100), "slowest classification {slowest:?}");
    Ok(format!("Fock(M=3); BilateralPeriodic(2), stabilizer 2Z; q=1/2 weights² = 1+q+…+q^(k−1) for k ≤ 30 ({c3}); slowest {slowest:.1?}"))
}

fn periodic_reps() -> (GradedAlgebraSpec, DynOrbit, Vec<InducedRep>) {
    let spec = GradedAlgebraSpec::dynamical(func("1-t"));
    let o = orbit("1-t", Scalar::rat(1, 4), 20, 20);
    let reps = (0..8).map(|k| dyn_periodic_rep(&o, &Scalar::root_of_unity(8, k)).unwrap()).collect();
    (spec, o, reps)
}

fn c6_periodic() -> Outcome {
    let (spec, o, reps) = periodic_reps();
    let mut traces = Vec::new();
    for (k, rep) in reps.iter().enumerate() {
        let r = ok(relation_check(rep, &spec, DEFAULT_TOLERANCE))?;
        ensure!(r.passed() && r.residual.is_exact() && r.residual.is_zero(), "z=ω^{k}: relation residual {}", r.residual);
        let c = ok(commutant_dimension(&ops(rep)))?;
        ensure!(c.dimension == 1, "z=ω^{k}: commutant dimension {}", c.dimension);
        let a = rep.op("a").unwrap();
        traces.push(a.mul(a).trace());
    }
    let mut witness = String::new();
    for i in 0..8 {
        for j in i + 1..8 {
            ensure!(traces[i] != traces[j], "tr π(a²) agrees for ω^{i}, ω^{j}");
            match equivalence_check(&reps[i], &reps[j], 4, DEFAULT_TOLERANCE) {
                Equivalence::Inequivalent { witness: w } => witness = w,
                other => return Err(format!("ω^{i} vs ω^{j}: {other:?}")),
            }
        }
    }
    let m = ok(mackey_cocycle(&Character::Dyn(o), &spec, 8))?;
    ensure!(m.verdict.is_trivial(), "Mackey verdict {}", m.verdict);
    Ok(format!("8 reps exact, irreducible, pairwise inequivalent (tr a² distinct; witness word \"{witness}\"); obstruction {}", m.verdict))
}

/// Brute-force character of the 2-dimensional irreducible of S₃: fixed
/// points of the permutation minus one.
fn standard_character(name: &str) -> i64 {
    let moved = name.chars().filter(|c| c.is_ascii_digit()).count() as i64;
    (3 - moved) - 1
}

fn sign_character(name: &str) -> i64 {
    // a k-cycle has sign (−1)^(k−1); names are single cycles or "e"
    let moved = name.chars().filter(|c| c.is_ascii_digit()).count() as i64;
    if moved == 0 || moved % 2 == 1 {
        1
    } else {
        -1
    }
}

fn s3_reps() -> (GradedAlgebraSpec, Arc<gsr_core::group::FiniteGroup>, Vec<usize>, Vec<InducedRep>) {
    let (spec, s3) = GradedAlgebraSpec::s3_over_a3();
    let a3 = s3.closure(&[s3.find("(123)").unwrap()]);
    let omega = FiniteGroupCharacter::cyclic(s3.clone(), s3.find("(123)").unwrap(), 1).unwrap();
    let triv = FiniteGroupCharacter::trivial(s3.clone(), &a3);
    let reps = [omega, triv]
        .into_iter()
        .map(|c| induce_character(&Character::Finite(c), &spec, Window::default()).unwrap())
        .collect();
    (spec, s3, a3, reps)
}

fn c7_finite() -> Outcome {
    let (spec, s3, a3, reps) = s3_reps();
    let (omega, triv) = (&reps[0], &reps[1]);
    ensure!(omega.dim() == 2, "Ind ω has dimension {}", omega.dim());
    let c = ok(commutant_dimension(&ops(omega)))?;
    ensure!(c.dimension == 1, "Ind ω commutant dimension {}", c.dimension);
    for g in 0..s3.order() {
        let name = s3.name(g);
        let tr = omega.op(name).unwrap().trace();
        ensure!(tr == Scalar::int(standard_character(name)), "tr π({name}) = {tr}");
    }
    let blocks = decompose_by_commutant(triv);
    ensure!(blocks.len() == 2, "Ind 1 splits into {} blocks", blocks.len());
    let mut found = Vec::new();
    for b in &blocks {
        let chars: Vec<i64> = (0..s3.order()).map(|g| b[s3.name(g)][(0, 0)].re.round() as i64).collect();
        if (0..s3.order()).all(|g| chars[g] == 1) {
            found.push("trivial");
        } else if (0..s3.order()).all(|g| chars[g] == sign_character(s3.name(g))) {
            found.push("sign");
        }
    }
    found.sort_unstable();
    ensure!(found == ["sign", "trivial"], "Ind 1 blocks: {found:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = spec.group.trivial_subgroup();
    for trial in 0..100 {
        let coeffs: Vec<Scalar> = (0..s3.order())
            .map(|_| Scalar::from_qi(qi(qr(rng.gen_range(-5..=5), rng.gen_range(1..=4)), qr(rng.gen_range(-5..=5), rng.gen_range(1..=4)))))
            .collect();
        let mut p = NCPolynomial::zero();
        for (g, c) in coeffs.iter().enumerate() {
            p.add_term(GradedWord::new(vec![Letter::plain(g)]), c.clone());
        }
        let a = GroupAlgebraElement { group: s3.clone(), coeffs: coeffs.clone() };
        let ep = ok(conditional_expectation(&spec, &(&spec.involute(&p) * &p), &h))?;
        let got = ok(GroupAlgebraElement::from_poly(&spec, &ep))?;
        let mut want = GroupAlgebraElement::zero(s3.clone());
        for (_, ai) in a.coset_decomposition(&a3) {
            want = want.add(&ai.star().mul(&ai));
        }
        ensure!(got == want, "trial {trial}: p(a*a) ≠ Σ a_i* a_i");
        let norm: Scalar = coeffs.iter().map(Scalar::norm_sqr).sum();
        ensure!(got.coeffs[s3.identity()] == norm, "trial {trial}: identity coefficient is not Σ|θ_g|²");
        ensure!(got.is_zero() == a.is_zero(), "trial {trial}: faithfulness");
    }
    Ok("Ind ω: dim 2, irreducible, traces (2, 0, −1) by class; Ind 1 = trivial ⊕ sign; expectation strong and faithful on 100 elements".into())
}

fn c8_round_trip() -> Outcome {
    let mut cases: Vec<(String, GradedAlgebraSpec, InducedRep)> = Vec::new();
    for (n, rep) in spin_reps() {
        cases.push((format!("ψ_{n}"), GradedAlgebraSpec::su2(), rep));
    }
    let (pspec, _, preps) = periodic_reps();
    for (k, rep) in preps.into_iter().enumerate() {
        cases.push((format!("π_ω^{k}"), pspec.clone(), rep));
    }
    let (fspec, _, _, freps) = s3_reps();
    for (name, rep) in ["Ind ω", "Ind 1"].into_iter().zip(freps) {
        cases.push((name.into(), fspec.clone(), rep));
    }
    for (name, spec, rep) in &cases {
        let h = ok(natural_subgroup(rep, spec))?;
        let sys = ok(build_induced_system(rep, spec, &h))?;
        let v = ok(verify_system(&sys, spec, DEFAULT_TOLERANCE))?;
        ensure!(v.passed() && v.residual.is_exact() && v.residual.is_zero(), "{name}: system residual {}", v.residual);
        let rt = round_trip(&sys, spec, DEFAULT_TOLERANCE);
        ensure!(rt.status == Status::Pass, "{name}: round trip {} {:?}", rt.status, rt.witness);
    }
    Ok(format!("{} systems: axioms residual 0, reconstruct → re-induce → equivalent", cases.len()))
}

fn c9_well_behaved() -> Outcome {
    let mut count = 0;
    let su2 = GradedAlgebraSpec::su2();
    for (n, rep) in spin_reps() {
        let r = ok(well_behaved_check(&rep, &su2, DEFAULT_TOLERANCE))?;
        ensure!(r.passed(), "ψ_{n}: {:?}", r.witness);
        count += 1;
    }
    let (pspec, _, preps) = periodic_reps();
    for (k, rep) in preps.iter().enumerate() {
        let r = ok(well_behaved_check(rep, &pspec, DEFAULT_TOLERANCE))?;
        ensure!(r.passed(), "π_ω^{k}: {:?}", r.witness);
        count += 1;
    }
    let (fspec, _, _, freps) = s3_reps();
    for rep in &freps {
        let r = ok(well_behaved_check(rep, &fspec, DEFAULT_TOLERANCE))?;
        ensure!(r.passed(), "S3: {:?}", r.witness);
        count += 1;
    }
    // spin 1 with H conjugated by the swap e₀ ↔ e₁: still a commuting normal
    // family on B, but E no longer carries weight spaces where χ^g says
    let mut bad = su2_spin_rep(2);
    let h = bad.ops["H"].clone();
    let mut swapped = h.clone();
    swapped.set(0, 0, h.get(1, 1));
    swapped.set(1, 1, h.get(0, 0));
    bad.ops.insert("H".into(), swapped);
    let r = ok(well_behaved_check(&bad, &su2, DEFAULT_TOLERANCE))?;
    ensure!(r.status == Status::Fail, "corrupted fixture passed");
    Ok(format!("{count} bounded reps pass; corrupted fixture fails ({})", r.witness.unwrap_or_default()))
}

fn c10_virasoro() -> Outcome {
    let p = ok(DensityParams::new(Scalar::zero(), Scalar::rat(1, 2)))?;
    let rep = density_rep(&p, Window::symmetric(50), 5);
    let spec = GradedAlgebraSpec::virasoro_density(5);
    let interior: Vec<usize> = rep
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, Label::Int(n) if n.abs() <= 44))
        .map(|(i, _)| i)
        .collect();
    let r = ok(relation_residual(&rep, &spec, &interior, DEFAULT_TOLERANCE))?;
    ensure!(r.passed() && r.residual.to_f64() < 1e-10, "bracket residual {} ({:?})", r.residual, r.witness);
    let pts: Vec<_> = ok(fqs_parameters(3))?.into_iter().filter(|x| x.n == 3).collect();
    ensure!(pts.iter().all(|x| x.z == qr(1, 2)), "z_3 ≠ 1/2");
    let a: Vec<Q> = pts.iter().map(|x| x.a.clone()).collect();
    ensure!(a == [q(0), qr(1, 16), qr(1, 2)], "a values {a:?}");
    let mut verdicts = Vec::new();
    for pt in &pts {
        for level in 1..=2 {
            let (_, g) = ok(vir_gram_positivity(&Scalar::from_q(pt.a.clone()), &Scalar::from_q(pt.z.clone()), level, Convention::Standard))?;
            ensure!(g.passed(), "a={} level {level}: Gram not PSD (min {})", pt.a, g.residual);
            verdicts.push(format!("({},{level})", pt.a));
        }
    }
    Ok(format!("bracket residual {} on |n| ≤ 44; z=1/2, a ∈ {{0, 1/16, 1/2}}; PSD at {}", r.residual, verdicts.join(" ")))
}

fn c11_partial_action() -> Outcome {
    let dyn_pool: Vec<DynOrbit> = [
        ("t+1", Scalar::int(0)),
        ("t+1", Scalar::int(3)),
        ("t+1", Scalar::int(7)),
        ("1-t", Scalar::rat(1, 4)),
        ("1-t", Scalar::rat(2, 5)),
        ("1-t", Scalar::int(1)),
        ("1/2*t + 1", Scalar::zero()),
        ("1/2*t + 1", Scalar::int(1)),
    ]
    .into_iter()
    .map(|(f, s)| orbit(f, s, 40, 40))
    .collect();
    let sl2_pool: Vec<Sl2Character> = (0..5)
        .map(Sl2Character::psi)
        .chain([(0, 0), (-1, 0), (-1, 1), (3, 3), (3, -3), (-5, 1)].map(|(s, t)| Sl2Character::new(Sl2Kind::Su11, q(s), q(t))))
        .collect();
    let same = |a: &DynOrbit, b: &DynOrbit| {
        let (lo, hi) = a.explored();
        let (lo2, hi2) = b.explored();
        a.lower.wall() == b.lower.wall()
            && a.upper.wall() == b.upper.wall()
            && (lo.max(lo2)..=hi.min(hi2)).all(|k| a.values()[&k] == b.values()[&k])
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut checked, mut defined) = (0, 0);
    while checked < 1000 {
        let (g, h) = (rng.gen_range(-6..=6i64), rng.gen_range(-6..=6i64));
        if rng.gen_bool(0.5) {
            let chi = &dyn_pool[rng.gen_range(0..dyn_pool.len())];
            let id = ok(chi.shifted(0))?.ok_or("identity undefined")?;
            ensure!(same(&id, chi), "identity axiom fails");
            if let Some(y) = ok(chi.shifted(g))? {
                defined += 1;
                let back = ok(y.shifted(-g))?.ok_or("inverse undefined")?;
                ensure!(same(&back, chi), "inverse axiom fails at g={g}");
                if let Some(z) = ok(y.shifted(h))? {
                    let direct = ok(chi.shifted(g + h))?.ok_or_else(|| format!("χ^(g+h) undefined at g={g}, h={h}"))?;
                    ensure!(same(&direct, &z), "composition fails at g={g}, h={h}");
                }
            }
        } else {
            let chi = &sl2_pool[rng.gen_range(0..sl2_pool.len())];
            ensure!(ok(sl2_act(chi, 0))?.as_ref() == Some(chi), "identity axiom fails");
            if let Some(y) = ok(sl2_act(chi, g))? {
                defined += 1;
                ensure!(ok(sl2_act(&y, -g))?.as_ref() == Some(chi), "inverse axiom fails at g={g}");
                if let Some(z) = ok(sl2_act(&y, h))? {
                    ensure!(ok(sl2_act(chi, g + h))? == Some(z), "composition fails at g={g}, h={h}");
                }
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} instances ({defined} with χ^g defined): identity, inverse, composition exact"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Bargmann-Fock reconstruction", c1_fock),
        ("inducibility dichotomy", c2_dichotomy),
        ("su(2) induced from ψ_n", c3_su2),
        ("su(1,1) series", c4_su11),
        ("dynamical classification", c5_classification),
        ("periodic Mackey family", c6_periodic),
        ("finite-group Mackey machine", c7_finite),
        ("imprimitivity round trip", c8_round_trip),
        ("well-behavedness", c9_well_behaved),
        ("Virasoro density and FQS", c10_virasoro),
        ("partial-action axioms", c11_partial_action),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
