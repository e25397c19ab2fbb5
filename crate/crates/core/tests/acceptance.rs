//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the verdict lines are always shown;
//! the process exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pclosure::ideals::{largest_prime_in, Cut, LargestPrimeOracle, OracleVerdict, PrimeCut};
use pclosure::lexgroup::GroupElement;
use pclosure::pcvseq::{
    classify, closure_describe, closure_equal, in_closure, Classification, GeoTail, OutsideReason,
    PCSeq, Part,
};
use pclosure::regbasis::{
    expand_in_basis, hn_build, hn_values_check, is_integer_valued, oracle_in_closure,
    ClosureOracle, HnValue, OracleOutcome,
};
use pclosure::valfield::{FieldElement, KPoly};
use rand::Rng;

use common::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn var(rank: usize, i: usize) -> FieldElement {
    FieldElement::var(rank, i)
}

// ---------------------------------------------------------------------------
// 1. The non-topological counterexample at rank 2.

fn counterexample() -> Verdict {
    let start = Instant::now();
    let t = var(2, 2);
    let p = var(2, 1);
    let sq = |k: i64| t.pow(k).unwrap();
    let e = PCSeq::geometric(sq(1), &sq(2) - &sq(1), lv(&[0, 1])).map_err(|e| e.to_string())?;
    let e2 = PCSeq::geometric(sq(2), &sq(3) - &sq(2), lv(&[0, 1])).map_err(|e| e.to_string())?;
    let alpha = &t + &p;

    // Br = {v1 ≥ 1} = P_1 for both
    let p1 = PrimeCut::new(1, 2).unwrap().as_cut();
    let expected_breadth = Cut::open(lv(&[0, 7]), 1).unwrap();
    ensure(
        e.breadth() == expected_breadth && e2.breadth() == expected_breadth,
        || format!("breadths {} / {}", e.breadth(), e2.breadth()),
    )?;
    ensure(e.breadth() == p1, || "breadth is not {v1 >= 1}".into())?;
    for g in [lv(&[1, -50]), lv(&[1, 0]), lv(&[2, 3])] {
        ensure(
            e.breadth().contains_value(&GroupElement::Finite(g.clone())),
            || format!("{g} should be in the breadth"),
        )?;
    }
    for g in [lv(&[0, 50]), lv(&[0, 1])] {
        ensure(
            !e.breadth().contains_value(&GroupElement::Finite(g.clone())),
            || format!("{g} should not be in the breadth"),
        )?;
    }
    ensure(
        e.pseudo_limit().is_zero() && e2.pseudo_limit().is_zero(),
        || format!("pseudo-limits {} / {}", e.pseudo_limit(), e2.pseudo_limit()),
    )?;
    let c1 = classify(&e, &alpha).class;
    ensure(c1 == Classification::Coset(0), || {
        format!("classify(E, t+p) = {c1}")
    })?;
    let c2 = classify(&e2, &alpha).class;
    ensure(!c2.is_member(), || format!("classify(E', t+p) = {c2}"))?;
    ensure(
        c2 == Classification::Outside(OutsideReason::GaugeUndershoot(0)),
        || format!("classify(E', t+p) = {c2}"),
    )?;
    let oracle = oracle_in_closure(&e2, &alpha, 5);
    ensure(
        oracle
            == OracleOutcome::Fail {
                n: 1,
                valuation: lv(&[0, -1]),
            },
        || format!("oracle(E', t+p, 5) = {oracle}"),
    )?;
    // the exact value: H'_1(t+p) = (t + p − t²)/(t³ − t²)
    let h1 = &(&alpha - &sq(2)) / &(&sq(3) - &sq(2));
    ensure(reference_valuation(&h1) == Some(vec![0, -1]), || {
        "v(H'_1(t+p))".into()
    })?;
    let eq = closure_equal(&e, &e2).map_err(|e| e.to_string())?;
    ensure(!eq.equal(), || "closures reported equal".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "Br = P_1, sigma = 0, Coset(0) vs {c2}, oracle Fail(1) at (0,-1), closures differ, under 1 s"
    ))
}

// ---------------------------------------------------------------------------
// Structured corpus of (E, α) pairs.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Limit,
    LimitShifted,
    Term,
    CosetMember,
    PrimeBoundary,
    UnitShift,
    AboveGauge,
    Random,
}

struct Pair {
    seq: PCSeq,
    alpha: FieldElement,
    kind: Kind,
}

fn corpus_for(rng: &mut impl Rng, seq: &PCSeq, out: &mut Vec<Pair>) {
    let rank = seq.rank();
    let mut push = |alpha: FieldElement, kind| {
        out.push(Pair {
            seq: seq.clone(),
            alpha,
            kind,
        })
    };
    let sigma = seq.pseudo_limit();
    push(sigma.clone(), Kind::Limit);
    if let Some(g) = rand_in_cut(rng, &seq.breadth(), rank) {
        push(&sigma + &rand_with_value(rng, &g), Kind::LimitShifted);
    }
    let k = rng.gen_range(0..=6);
    push(seq.term(k), Kind::Term);
    let k = rng.gen_range(0..=5);
    let c = seq.diff(k);
    if let Some(y) = rand_in_prime(rng, rank, prime_of(seq, k).j()) {
        push(
            &seq.term(k) + &(&c * &rand_with_value(rng, &y)),
            Kind::CosetMember,
        );
    }
    if let Some(y) = rand_outside_prime(rng, rank, prime_of(seq, k).j()) {
        push(
            &seq.term(k) + &(&c * &rand_with_value(rng, &y)),
            Kind::PrimeBoundary,
        );
    }
    let unit = FieldElement::constant(rank, small_rational(rng));
    push(&seq.term(k) + &(&c * &unit), Kind::UnitShift);
    let n = rng.gen_range(0..=6);
    let above = &seq.gauge_at(n) + &rand_outside_prime(rng, rank, 0).unwrap();
    if !seq
        .breadth()
        .contains_value(&GroupElement::Finite(above.clone()))
    {
        push(
            &sigma + &mono(small_rational(rng), &above),
            Kind::AboveGauge,
        );
    }
    push(rand_field_element(rng, rank), Kind::Random);
}

fn corpus(seed: u64, per_rank: usize) -> Vec<Pair> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for rank in 1..=3 {
        for _ in 0..per_rank {
            let seq = rand_sequence(&mut rng, rank);
            corpus_for(&mut rng, &seq, &mut out);
        }
    }
    out
}

// 2. Closure membership agrees with the one-sided H_n oracle.

fn classifier_vs_oracle() -> Verdict {
    let start = Instant::now();
    let pairs = corpus(2024, 12);
    let (mut members, mut outside) = (0, 0);
    let mut max_witness = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let member = in_closure(&pair.seq, &pair.alpha);
        let oracle = oracle_in_closure(&pair.seq, &pair.alpha, 30);
        match (member, &oracle) {
            (true, OracleOutcome::Pass) => members += 1,
            (false, OracleOutcome::Fail { n, .. }) => {
                outside += 1;
                max_witness = max_witness.max(*n);
            }
            _ => return Err(format!(
                "pair {i} ({:?}, rank {}): in_closure = {member}, oracle = {oracle}, alpha = {}",
                pair.kind,
                pair.seq.rank(),
                pair.alpha
            )),
        }
        // constructed members must be recognised as such
        if matches!(
            pair.kind,
            Kind::Limit | Kind::LimitShifted | Kind::Term | Kind::CosetMember
        ) {
            ensure(member, || {
                format!("pair {i} ({:?}) not classified as a member", pair.kind)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(pairs.len() >= 100, || format!("only {} pairs", pairs.len()))?;
    ensure(members > 0 && outside > 0, || {
        "corpus lacks one side".into()
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} pairs (ranks 1-3): {members} members Pass, {outside} non-members Fail (largest witness n = {max_witness}), under 60 s",
        pairs.len()
    ))
}

// ---------------------------------------------------------------------------
// 3. largest_prime_in against the brute-force oracle.

fn largest_prime_cross_validation() -> Verdict {
    let mut rng = rng(7);
    let (mut cuts, mut samples, mut zero_cuts) = (0, 0, 0);
    while cuts < 60 {
        let rank = rng.gen_range(1..=3);
        let cut = rand_cut_in_m(&mut rng, rank);
        if cut == Cut::Zero {
            zero_cuts += 1;
            if zero_cuts > 5 {
                continue;
            }
        }
        let p = largest_prime_in(&cut, rank).map_err(|e| e.to_string())?;
        let oracle = LargestPrimeOracle::new(&cut, rank, 8, 8).map_err(|e| e.to_string())?;
        ensure(p.as_cut().is_subset(&cut), || {
            format!("{p} is not inside {cut}")
        })?;
        if p.j() < rank {
            let next = PrimeCut::new(p.j() + 1, rank).unwrap();
            ensure(!next.as_cut().is_subset(&cut), || {
                format!("{next} fits inside {cut}")
            })?;
        }
        for _ in 0..120 {
            let g = rand_vec(&mut rng, rank, -4, 4);
            let x = rand_with_value(&mut rng, &g);
            let theory = in_prime_ref(&coords(&g), p.j());
            ensure(p.contains(&x) == theory, || {
                format!("{p} membership of {g}")
            })?;
            let brute = oracle.check(&x) == OracleVerdict::Pass;
            ensure(theory == brute, || {
                format!(
                    "cut {cut} (rank {rank}): {p} says {theory}, oracle says {brute} for v = {g}"
                )
            })?;
            samples += 1;
        }
        cuts += 1;
    }
    Ok(format!(
        "{cuts} cuts, {samples} samples, 0 disagreements (B = N = 8)"
    ))
}

// ---------------------------------------------------------------------------
// 4. v(α − s_n) > δ_n for at most one n.

fn at_most_one_overshoot() -> Verdict {
    let mut rng = rng(41);
    let mut with_one = 0;
    for i in 0..200 {
        let rank = rng.gen_range(1..=3);
        let seq = rand_sequence(&mut rng, rank);
        let mut pairs = Vec::new();
        corpus_for(&mut rng, &seq, &mut pairs);
        let alpha = pairs.swap_remove(rng.gen_range(0..pairs.len())).alpha;
        let terms = seq.terms(32);
        let mut count = 0;
        for n in 0..=30 {
            let gauge = reference_valuation(&(&terms[n + 1] - &terms[n])).unwrap();
            match reference_valuation(&(&alpha - &terms[n])) {
                None => count += 1,
                Some(w) if lex_cmp(&w, &gauge).is_gt() => count += 1,
                _ => {}
            }
        }
        ensure(count <= 1, || {
            format!("pair {i}: {count} indices overshoot the gauge")
        })?;
        if count == 1 {
            with_one += 1;
        }
    }
    Ok(format!(
        "200 pairs, N = 30: never more than one index ({with_one} pairs with exactly one)"
    ))
}

// ---------------------------------------------------------------------------
// 5. The parts of the description are pairwise disjoint.

fn disjointness() -> Verdict {
    let pairs = corpus(99, 10);
    let mut checked = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let class = classify(&pair.seq, &pair.alpha).class;
        let expected = match class {
            Classification::PseudoLimit => Part::PseudoLimits,
            Classification::Coset(k) => Part::Coset(k),
            Classification::Outside(_) => continue,
        };
        let desc = closure_describe(&pair.seq);
        let parts = desc.parts_containing(&pair.alpha, 30);
        ensure(parts == vec![expected], || {
            format!("pair {i}: classified {class} but lies in {parts:?}")
        })?;
        checked += 1;
    }
    ensure(checked >= 50, || format!("only {checked} members"))?;
    Ok(format!(
        "{checked} members each lie in exactly one part (cosets k <= 30 scanned)"
    ))
}

// ---------------------------------------------------------------------------
// 6. Rank one: the closure is the sequence plus its limit.

fn rank_one() -> Verdict {
    let mut rng = rng(1);
    let mut equal_pairs = (0, 0);
    for i in 0..20 {
        let seq = rand_sequence(&mut rng, 1);
        ensure(seq.breadth() == Cut::Zero, || {
            format!("seq {i}: breadth {}", seq.breadth())
        })?;
        ensure(seq.tail_prime().j() == 0, || format!("seq {i}: tail prime"))?;
        let sigma = seq.pseudo_limit();
        let terms = seq.terms(31);
        ensure(
            classify(&seq, &sigma).class == Classification::PseudoLimit,
            || format!("seq {i}: sigma not a pseudo-limit"),
        )?;
        for (n, s) in terms.iter().enumerate() {
            ensure(classify(&seq, s).class == Classification::Coset(n), || {
                format!("seq {i}: s_{n} not in Coset({n})")
            })?;
        }
        // anything else is outside
        let mut others: Vec<FieldElement> = (0..6)
            .map(|_| {
                let k = rng.gen_range(0..=8);
                let g = rand_vec(&mut rng, 1, -3, 8);
                let eps = rand_with_value(&mut rng, &g);
                &seq.term(k) + &eps
            })
            .collect();
        others.extend((0..4).map(|_| rand_field_element(&mut rng, 1)));
        others.push(&sigma + &FieldElement::one(1));
        for alpha in &others {
            let gap = (alpha - &sigma).finite_valuation();
            // s_n ≠ α once δ_n exceeds v(α − σ)
            let bound = match &gap {
                None => 0,
                Some(g) => (0..).find(|&n| seq.gauge_at(n) > *g).unwrap(),
            };
            let truth = gap.is_none() || (0..=bound).any(|n| seq.term(n) == *alpha);
            ensure(in_closure(&seq, alpha) == truth, || {
                format!("seq {i}: membership of {alpha}")
            })?;
        }
        // closure equality is equality of the sequences
        let mut partners = vec![seq.with_start(seq.start() + 2)];
        let k = rng.gen_range(0..=4);
        let eps = mono(small_rational(&mut rng), &(&seq.gauge_at(k) + &lv(&[1])));
        partners.push(
            seq.replace_term(k, &seq.term(k) + &eps)
                .map_err(|e| e.to_string())?,
        );
        let tail = seq.tail();
        let bumped = &tail.u
            + &mono(
                small_rational(&mut rng),
                &(&tail.u.finite_valuation().unwrap() + &lv(&[1])),
            );
        partners.push(
            PCSeq::new(
                seq.prefix().to_vec(),
                GeoTail::new(bumped, tail.b.clone(), tail.start),
            )
            .map_err(|e| e.to_string())?,
        );
        for f in &partners {
            let same_terms = (0..=30).all(|n| seq.term(n) == f.term(n));
            let eq = closure_equal(&seq, f).map_err(|e| e.to_string())?.equal();
            ensure(eq == same_terms, || {
                format!("seq {i}: closure_equal {eq}, terms equal {same_terms}")
            })?;
            if eq {
                equal_pairs.0 += 1;
            } else {
                equal_pairs.1 += 1;
            }
        }
    }
    Ok(format!(
        "20 sequences: Br = 0, closure = terms + sigma; closure_equal matched term equality ({} equal, {} different)",
        equal_pairs.0, equal_pairs.1
    ))
}

// ---------------------------------------------------------------------------
// 7. Moving one term inside c_k·P_k keeps the closure; outside changes it.

fn members_of(rng: &mut impl Rng, seq: &PCSeq, count: usize) -> Vec<FieldElement> {
    let rank = seq.rank();
    let sigma = seq.pseudo_limit();
    (0..count)
        .map(|i| match i % 3 {
            0 => match rand_in_cut(rng, &seq.breadth(), rank) {
                Some(g) => &sigma + &rand_with_value(rng, &g),
                None => sigma.clone(),
            },
            1 => seq.term(rng.gen_range(0..=8)),
            _ => {
                let k = rng.gen_range(0..=6);
                match rand_in_prime(rng, rank, prime_of(seq, k).j()) {
                    Some(y) => &seq.term(k) + &(&seq.diff(k) * &rand_with_value(rng, &y)),
                    None => seq.term(k),
                }
            }
        })
        .collect()
}

fn perturbation() -> Verdict {
    let mut rng = rng(77);
    let (mut kept, mut broken, mut oracle_checks) = (0, 0, 0);
    for i in 0..20 {
        let rank = rng.gen_range(2..=3);
        let e = rand_sequence(&mut rng, rank);
        for k in 0..=5 {
            let c = e.diff(k);
            let prime = prime_of(&e, k);
            let eps = match rand_in_prime(&mut rng, rank, prime.j()) {
                Some(y) => &c * &rand_with_value(&mut rng, &y),
                None => FieldElement::zero(rank),
            };
            let f = e
                .replace_term(k, &e.term(k) + &eps)
                .map_err(|e| e.to_string())?;
            let rep = closure_equal(&e, &f).map_err(|e| e.to_string())?;
            ensure(rep.equal(), || format!("seq {i}, k={k}: {:?}", rep.failure))?;
            kept += 1;
            for (src, dst) in [(&e, &f), (&f, &e)] {
                let oracle = ClosureOracle::new(dst, 30);
                for alpha in members_of(&mut rng, src, 10) {
                    let out = oracle.check(&alpha);
                    ensure(out == OracleOutcome::Pass, || {
                        format!("seq {i}, k={k}: member {alpha} fails the other oracle: {out}")
                    })?;
                    oracle_checks += 1;
                }
            }

            let gamma = rand_outside_prime(&mut rng, rank, prime.j()).expect("P_k ≠ M");
            let bad = &c * &rand_with_value(&mut rng, &gamma);
            let g = e
                .replace_term(k, &e.term(k) + &bad)
                .map_err(|e| e.to_string())?;
            let rep = closure_equal(&e, &g).map_err(|e| e.to_string())?;
            ensure(!rep.equal(), || {
                format!("seq {i}, k={k}: perturbation by {gamma} kept the closure")
            })?;
            broken += 1;
        }
    }
    Ok(format!(
        "20 sequences x k = 0..5: {kept} inside perturbations equal ({oracle_checks} mutual oracle Pass), {broken} outside perturbations differ"
    ))
}

// ---------------------------------------------------------------------------
// 8. Regular basis.

fn demo_sequence() -> PCSeq {
    let t = var(2, 2);
    PCSeq::geometric(t.clone(), &(&t * &t) - &t, lv(&[0, 1])).unwrap()
}

fn regular_basis() -> Verdict {
    let mut rng = rng(5);
    let mut seqs = vec![demo_sequence()];
    for rank in 1..=3 {
        seqs.push(rand_sequence(&mut rng, rank));
    }
    let mut value_checks = 0;
    for (i, seq) in seqs.iter().enumerate() {
        for n in 0..=15 {
            for j in 0..=25 {
                let v = hn_values_check(seq, n, j).map_err(|e| format!("seq {i}: {e}"))?;
                let want = if j < n { HnValue::Zero } else { HnValue::Unit };
                ensure(v == want, || format!("seq {i}: H_{n}(s_{j})"))?;
                value_checks += 1;
            }
        }
    }

    // Generic a_n make the coefficients of Σ a_n H_n grow as products of
    // the denominators Π(s_n - s_i), since fractions are not gcd-reduced.
    // Degree 10 is therefore exercised with generic a_n on the demo
    // sequence, and on every sequence with a_n = r_n·Π_{i<n}(s_n - s_i)
    // for random r_n, which keeps Σ a_n H_n = Σ r_n Π_{i<n}(X - s_i) small.
    let mut round_trips = 0;
    for (i, seq) in seqs.iter().enumerate() {
        let rank = seq.rank();
        let terms = seq.terms(11);
        let generic_max = if i == 0 { 10 } else { 5 };
        for (d, cleared) in [
            (generic_max, false),
            (rng.gen_range(0..=generic_max), false),
            (10, true),
        ] {
            let r: Vec<FieldElement> = (0..=d)
                .map(|_| {
                    let k = rng.gen_range(1..=2);
                    rand_element(&mut rng, rank, k, 2)
                })
                .collect();
            let (coeffs, f) = if cleared {
                let mut coeffs = Vec::new();
                let mut f = KPoly::zero(rank);
                let mut falling = KPoly::one(rank);
                for (n, rn) in r.iter().enumerate() {
                    let den = terms[..n]
                        .iter()
                        .fold(FieldElement::one(rank), |acc, si| &acc * &(&terms[n] - si));
                    coeffs.push(rn * &den);
                    f = f.add(&falling.scale(rn));
                    falling = falling.mul(&KPoly::linear_root(&terms[n]));
                }
                (coeffs, f)
            } else {
                let f = r.iter().enumerate().fold(KPoly::zero(rank), |acc, (n, a)| {
                    acc.add(&hn_build(seq, n).scale(a))
                });
                (r, f)
            };
            let got = expand_in_basis(seq, &f);
            let mut want = coeffs;
            while want.last().is_some_and(FieldElement::is_zero) {
                want.pop();
            }
            ensure(got.coeffs == want, || {
                format!("seq {i}: round trip at degree {d}")
            })?;
            if !cleared {
                ensure(got.reconstruct(seq) == f, || {
                    format!("seq {i}: reconstruct at degree {d}")
                })?;
            }
            round_trips += 1;
        }
    }

    let (mut iv, mut not_iv) = (0, 0);
    for seq in &seqs {
        let rank = seq.rank();
        let terms = seq.terms(26);
        for trial in 0..6 {
            let d = rng.gen_range(1..=6);
            let f = if trial % 2 == 0 {
                // Σ a_n H_n with a_n ∈ V, occasionally one a_n pushed out of V
                (0..=d).fold(KPoly::zero(rank), |acc, n| {
                    let g = if trial == 4 && n == d {
                        rand_vec(&mut rng, rank, -2, -1)
                    } else {
                        rand_nonneg(&mut rng, rank)
                    };
                    acc.add(&hn_build(seq, n).scale(&mono(small_rational(&mut rng), &g)))
                })
            } else {
                KPoly::new(
                    rank,
                    (0..=d)
                        .map(|_| rand_element(&mut rng, rank, 1, 2))
                        .collect(),
                )
            };
            let claimed = is_integer_valued(seq, &f);
            let sampled = terms.iter().all(|s| f.eval(s).in_v());
            ensure(claimed == sampled, || {
                format!("is_integer_valued = {claimed}, sampling says {sampled}")
            })?;
            if claimed {
                iv += 1;
            } else {
                not_iv += 1;
            }
        }
    }
    Ok(format!(
        "{value_checks} H_n(s_j) values (n <= 15, j <= 25), {round_trips} round trips (deg <= 10), integer-valued agrees with sampling n <= 25 ({iv} yes, {not_iv} no)"
    ))
}

// ---------------------------------------------------------------------------
// 9. Valuation axioms.

fn valuation_axioms() -> Verdict {
    let mut rng = rng(9);
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    for i in 0..500 {
        let rank = rng.gen_range(1..=3);
        let x = rand_field_element(&mut rng, rank);
        let y = if rng.gen_bool(0.1) {
            -&x
        } else {
            rand_field_element(&mut rng, rank)
        };
        let (vx, vy) = (reference_valuation(&x), reference_valuation(&y));
        ensure(
            x.valuation().is_infinite() == x.is_zero() && vx.is_none() == x.is_zero(),
            || format!("pair {i}: zero test"),
        )?;
        ensure(
            vx.as_deref() == x.valuation().as_finite().map(coords).as_deref(),
            || format!("pair {i}: v({x}) disagrees with the term scan"),
        )?;
        let vxy = reference_valuation(&(&x * &y));
        match (&vx, &vy) {
            (Some(a), Some(b)) => ensure(vxy == Some(add(a, b)), || format!("pair {i}: v(xy)"))?,
            _ => ensure(vxy.is_none(), || format!("pair {i}: v(0·y)"))?,
        }
        let vs = reference_valuation(&(&x + &y));
        let min = match (&vx, &vy) {
            (None, m) | (m, None) => m.clone(),
            (Some(a), Some(b)) => Some(if lex_cmp(a, b).is_le() {
                a.clone()
            } else {
                b.clone()
            }),
        };
        match (&vs, &min) {
            (_, None) => ensure(vs.is_none(), || format!("pair {i}: 0 + 0"))?,
            (None, Some(_)) => ensure(vx == vy, || {
                format!("pair {i}: cancellation with distinct values")
            })?,
            (Some(s), Some(m)) => {
                ensure(lex_cmp(s, m).is_ge(), || format!("pair {i}: v(x+y) < min"))?;
                if vx != vy {
                    ensure(s == m, || {
                        format!("pair {i}: v(x+y) != min for distinct values")
                    })?;
                }
            }
        }
        ensure((&x - &y).is_zero() == (x == y), || {
            format!("pair {i}: equality")
        })?;
    }
    Ok(
        "500 pairs: v(xy) = v(x)+v(y), v(x+y) >= min with equality off the diagonal, v = inf iff 0"
            .into(),
    )
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("counterexample reproduction", counterexample),
        ("classifier vs oracle agreement", classifier_vs_oracle),
        (
            "largest prime vs brute force",
            largest_prime_cross_validation,
        ),
        ("at most one gauge overshoot", at_most_one_overshoot),
        ("disjointness of the parts", disjointness),
        ("rank one closure", rank_one),
        ("perturbation suite", perturbation),
        ("regular basis suite", regular_basis),
        ("valuation axioms", valuation_axioms),
    ];
    // optional numeric arguments select criteria; other arguments are ignored
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
