//! The counterexample to finite additivity: with `t = t_r`, `p = t1`,
//! `E = {t^(n+1)}` and `E' = {t^(n+2)}`, we have `E = E' ∪ {t}` while
//! `t + p` lies in the closure of `E` but neither in that of `E'` nor in
//! the (finite, hence closed) set `{t}`.

use pclosure::ideals::{largest_prime_strictly_in, Cut, PrimeCut};
use pclosure::lexgroup::LexVec;
use pclosure::pcvseq::{classify, closure_equal, Classification, OutsideReason, PCSeq};
use pclosure::regbasis::{oracle_in_closure, OracleOutcome};
use pclosure::valfield::FieldElement;

use crate::report::{Item, Record};
use crate::Outcome;

fn row(check: &str, expected: Item, got: Item) -> (Record, bool) {
    let ok = expected.to_json() == got.to_json();
    let rec = Record::new("demo", Item::Bool(ok))
        .field("check", Item::str(check))
        .field("expected", expected)
        .field("got", got)
        .inline();
    (rec, ok)
}

pub fn nontopological(rank: usize, horizon: usize) -> Result<Outcome, String> {
    if rank < 2 {
        return Err(format!(
            "the construction needs rank at least 2, got {rank}"
        ));
    }
    let e_r = LexVec::unit(rank, rank);
    let t = FieldElement::var(rank, rank);
    let p = FieldElement::var(rank, 1);
    let tn = |k: i64| t.pow(k).expect("t is nonzero");
    let e = PCSeq::geometric(tn(1), &tn(2) - &tn(1), e_r.clone()).map_err(|e| e.to_string())?;
    let e2 = PCSeq::geometric(tn(2), &tn(3) - &tn(2), e_r.clone()).map_err(|e| e.to_string())?;
    let alpha = &t + &p;
    let tname = format!("t{rank}");

    let mut rows = Vec::new();

    let union_ok = e.term(0) == t && (0..=horizon).all(|n| e.term(n + 1) == e2.term(n));
    rows.push(row(
        &format!("E = E' u {{{tname}}} (checked up to n = {horizon})"),
        Item::Bool(true),
        Item::Bool(union_ok),
    ));

    let prime = PrimeCut::new(rank - 1, rank).map_err(|e| e.to_string())?;
    rows.push(row(
        "breadth(E)",
        Item::cut(&prime.as_cut()),
        Item::cut(&e.breadth()),
    ));
    rows.push(row(
        "breadth(E')",
        Item::cut(&prime.as_cut()),
        Item::cut(&e2.breadth()),
    ));

    let t_ideal = Cut::closed(e_r.clone());
    let big_p = largest_prime_strictly_in(&t_ideal, rank).map_err(|e| e.to_string())?;
    rows.push(row(
        &format!("largest prime strictly inside {tname}V"),
        Item::prime(&prime),
        Item::prime(&big_p),
    ));
    rows.push(row(
        &format!("p = t1 in P, {tname} not in P"),
        Item::Bool(true),
        Item::Bool(big_p.contains(&p) && !big_p.contains(&t)),
    ));

    let zero = FieldElement::zero(rank);
    rows.push(row(
        "pseudo_limit(E)",
        Item::str(&zero),
        Item::str(e.pseudo_limit()),
    ));
    rows.push(row(
        "pseudo_limit(E')",
        Item::str(&zero),
        Item::str(e2.pseudo_limit()),
    ));

    rows.push(row(
        &format!("classify(E, {alpha})"),
        Item::classification(&Classification::Coset(0)),
        Item::classification(&classify(&e, &alpha).class),
    ));
    rows.push(row(
        &format!("classify(E', {alpha})"),
        Item::classification(&Classification::Outside(OutsideReason::GaugeUndershoot(0))),
        Item::classification(&classify(&e2, &alpha).class),
    ));
    rows.push(row(
        &format!("{alpha} in closure of {{{tname}}}"),
        Item::Bool(false),
        Item::Bool(alpha == t),
    ));

    rows.push(row(
        &format!("oracle(E, {alpha}, {horizon})"),
        Item::oracle(&OracleOutcome::Pass),
        Item::oracle(&oracle_in_closure(&e, &alpha, horizon)),
    ));
    let expected_fail = OracleOutcome::Fail {
        n: 1,
        valuation: -&e_r,
    };
    rows.push(row(
        &format!("oracle(E', {alpha}, {horizon})"),
        Item::oracle(&expected_fail),
        Item::oracle(&oracle_in_closure(&e2, &alpha, horizon)),
    ));

    let rep = closure_equal(&e, &e2).map_err(|e| e.to_string())?;
    let (mut rec, ok) = row(
        "closure_equal(E, E')",
        Item::Bool(false),
        Item::Bool(rep.equal()),
    );
    if let Some(fail) = &rep.failure {
        rec = rec.field("certificate", Item::str(fail));
    }
    rows.push((rec, ok));

    let all = rows.iter().all(|(_, ok)| *ok);
    let failed = rows.iter().filter(|(_, ok)| !ok).count();
    let mut records: Vec<Record> = rows.into_iter().map(|(r, _)| r).collect();
    records.push(
        Record::new("demo", Item::Bool(all))
            .field("rank", Item::int(rank))
            .field("failed_checks", Item::int(failed))
            .field(
                "conclusion",
                Item::str(if all {
                    format!("{alpha} is in closure(E) but not in closure(E') u closure({{{tname}}}), so closure is not finitely additive")
                } else {
                    "expected verdicts did not all hold".to_string()
                }),
            ),
    );
    Ok(Outcome {
        records,
        holds: all,
    })
}
