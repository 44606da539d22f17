//! Acceptance gate. Runs the ten acceptance criteria in order, prints one
//! line per criterion and fails if any of them fails or overruns its time
//! budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use ogq::identities::{all_pass, appendix_sweep, box_two_row_sweep, boxprop_sweep, pfaffian_sweep};
use ogq::lg::correspondence_tuples;
use ogq::partitions::{dual, partitions_with_max_part, Partition, StrictPartition};
use ogq::qtilde::{engine, f_coeff};
use ogq::ring::{ring, QuantumClass};
use ogq::suites;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn witness() -> Outcome {
    let rho = Partition::new(vec![3, 2, 1]).unwrap();
    let nu = Partition::new(vec![4, 4, 2, 2]).unwrap();
    let f = f_coeff(&rho, &rho, &nu).map_err(|e| e.to_string())?;
    ensure(f == BigInt::from(-1), || format!("got {f}"))
}

fn presentation() -> Outcome {
    for n in 2..=5 {
        let r = ring(n);
        for (label, res) in r.presentation_residuals().map_err(|e| e.to_string())? {
            ensure(res.is_zero(), || format!("n={n} {label}: {res}"))?;
        }
        let top = StrictPartition::row(n);
        let sq = r.quantum_product(&top, &top).map_err(|e| e.to_string())?;
        ensure(*sq == QuantumClass::q_power(n, 1), || format!("n={n} τ_n² = {sq}"))?;
    }
    Ok(())
}

fn giambelli() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        for n in 3..=5 {
            let r = ring(n);
            for l in r.basis().iter().filter(|l| l.len() >= 3) {
                let res = r.giambelli_check(l).map_err(|e| e.to_string())?;
                ensure(res.is_zero(), || format!("n={n} λ={l}: {res}"))?;
            }
        }
        Ok(())
    })
}

fn pieri() -> Outcome {
    for n in 1..=5 {
        let r = ring(n);
        for l in r.basis() {
            for k in 0..=n {
                let rule = r.quantum_pieri(&l, k).map_err(|e| e.to_string())?;
                let prod = r.quantum_product(&l, &StrictPartition::row(k)).map_err(|e| e.to_string())?;
                ensure(rule == *prod, || format!("n={n} λ={l} k={k}: {rule} vs {prod}"))?;
            }
        }
    }
    Ok(())
}

fn duality() -> Outcome {
    for n in 1..=5 {
        let r = ring(n);
        let rho = StrictPartition::rho(n);
        for l in r.basis() {
            let hat = dual(&l, n).map_err(|e| e.to_string())?;
            let full = r.classical_product(&l, &hat).map_err(|e| e.to_string())?;
            let want: BTreeMap<_, _> = [(rho.clone(), BigInt::one())].into();
            ensure(full == want, || format!("n={n} λ={l}"))?;
            for m in r.basis() {
                let top = r.classical_product(&l, &m).map_err(|e| e.to_string())?;
                let c = top.get(&rho).cloned().unwrap_or_default();
                let want = if m == hat { BigInt::one() } else { BigInt::zero() };
                ensure(c == want, || format!("n={n} λ={l} μ={m}: {c}"))?;
            }
        }
    }
    Ok(())
}

fn rho_products() -> Outcome {
    for n in 2..=5 {
        let r = ring(n);
        let small = StrictPartition::rho(n - 1);
        for l in r.basis() {
            let closed = r.rho_product(&l).map_err(|e| e.to_string())?;
            let prod = r.quantum_product(&l, &small).map_err(|e| e.to_string())?;
            ensure(closed == *prod, || format!("n={n} λ={l}: {closed} vs {prod}"))?;
        }
        let rho = StrictPartition::rho(n);
        let sq = r.quantum_product(&rho, &rho).map_err(|e| e.to_string())?;
        let want = if n % 2 == 0 {
            QuantumClass::term(n, StrictPartition::row(n), n / 2, BigInt::one())
        } else {
            QuantumClass::q_power(n, n.div_ceil(2))
        };
        ensure(*sq == want, || format!("n={n} τ_ρ² = {sq}"))?;
    }
    Ok(())
}

fn correspondence() -> Outcome {
    for n in 2..=5 {
        let checks = suites::lg_checks(n).map_err(|e| e.to_string())?;
        if let Some(bad) = checks.iter().find(|c| !c.pass) {
            return Err(bad.to_json().to_string());
        }
        let names = ["ogsymmetry", "oglg", "lg_routes"];
        for name in names {
            ensure(checks.iter().any(|c| c.name == name), || format!("n={n}: no {name} checks"))?;
        }
    }
    let tuples = correspondence_tuples(5).len();
    ensure(tuples >= 500, || format!("only {tuples} tuples at n=5"))
}

fn identities() -> Outcome {
    let mut reports = pfaffian_sweep(5).map_err(|e| e.to_string())?;
    reports.extend(box_two_row_sweep(5).map_err(|e| e.to_string())?);
    reports.extend(boxprop_sweep(4).map_err(|e| e.to_string())?);
    reports.extend(appendix_sweep(4, 10).map_err(|e| e.to_string())?);
    ensure(all_pass(&reports), || {
        let bad = reports.iter().find(|r| !r.pass()).unwrap();
        bad.to_json().to_string()
    })
}

fn nonnegative_and_vanishing() -> Outcome {
    for n in 1..=4 {
        let r = ring(n);
        for l in r.basis() {
            for m in r.basis() {
                let p = r.quantum_product(&l, &m).map_err(|e| e.to_string())?;
                ensure(p.terms().values().all(|c| !c.is_negative()), || format!("n={n} {l}·{m} = {p}"))?;
            }
        }
        if n >= 2 {
            let checks = suites::vanishing_checks(n).map_err(|e| e.to_string())?;
            if let Some(bad) = checks.iter().find(|c| !c.pass) {
                return Err(bad.to_json().to_string());
            }
        }
    }
    Ok(())
}

fn stability() -> Outcome {
    for w in 0..=12u32 {
        for a in 0..=w {
            for l in partitions_with_max_part(a, a) {
                for m in partitions_with_max_part(w - a, w - a) {
                    if l > m {
                        continue;
                    }
                    let n = l.first().max(m.first()).max(1) as usize;
                    let small = engine(n).f_coeffs(&l, &m).map_err(|e| e.to_string())?;
                    let big = engine(n + 1).f_coeffs(&l, &m).map_err(|e| e.to_string())?;
                    let restricted: BTreeMap<_, _> =
                        big.into_iter().filter(|(nu, _)| nu.first() as usize <= n).collect();
                    ensure(small == restricted, || format!("{l} {m} n={n}"))?;
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("negative-coefficient witness", Some(1), witness),
        ("presentation", Some(10), presentation),
        ("quantum Giambelli", Some(120), giambelli),
        ("quantum Pieri", None, pieri),
        ("Poincare duality", None, duality),
        ("rho-products", None, rho_products),
        ("OG/LG correspondence", None, correspondence),
        ("identity suite", Some(300), identities),
        ("nonnegativity and vanishing", None, nonnegative_and_vanishing),
        ("stability", None, stability),
    ];
    let mut failures = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = budget.is_some_and(|s| took > Duration::from_secs(s));
        let pass = outcome.is_ok() && !over;
        let limit = budget.map(|s| format!(", limit {s}s")).unwrap_or_default();
        println!(
            "criterion {}: {} {name} ({:.2}s{limit})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if let Err(e) = &outcome {
            println!("  {e}");
        }
        if !pass {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
