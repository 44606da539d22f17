//! Structural properties of the quantum ring and the LG correspondence.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use ogq::lg::{correspondence_tuples, lg_gw, lg_gw_odd, ogsymmetry_check, LGQuery};
use ogq::partitions::{dual, strict_partitions, StrictPartition};
use ogq::ring::{ring, GWQuery, QuantumClass};
use ogq::suites;

fn sp(parts: &[u32]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

fn tau(n: u32, l: &StrictPartition) -> QuantumClass {
    QuantumClass::schubert(n, l.clone())
}

fn associative_on(n: u32, picks: &[StrictPartition]) {
    let r = ring(n);
    for a in picks {
        for b in picks {
            for c in picks {
                associative_at(n, &r, a, b, c);
            }
        }
    }
}

fn associative_at(n: u32, r: &ogq::ring::OgRing, a: &StrictPartition, b: &StrictPartition, c: &StrictPartition) {
    {
        let left = r.multiply(&r.quantum_product(a, b).unwrap(), &tau(n, c)).unwrap();
        let right = r.multiply(&tau(n, a), &r.quantum_product(b, c).unwrap()).unwrap();
        assert_eq!(left, right, "n={n} ({a})({b})({c})");
    }
}

#[test]
fn commutative_and_associative() {
    for n in 1..=4 {
        let basis = strict_partitions(n);
        let r = ring(n);
        for a in &basis {
            for b in &basis {
                assert_eq!(r.quantum_product(a, b).unwrap(), r.quantum_product(b, a).unwrap());
            }
        }
        associative_on(n, &basis);
    }
    // spot checks at n = 5
    let picks = [sp(&[]), sp(&[1]), sp(&[3]), sp(&[5]), sp(&[4, 2]), sp(&[5, 3, 1]), sp(&[5, 4, 3, 2, 1])];
    associative_on(5, &picks);
}

#[test]
fn products_are_graded() {
    for n in 1..=5 {
        let r = ring(n);
        let basis = strict_partitions(n);
        for a in &basis {
            for b in &basis {
                let p = r.quantum_product(a, b).unwrap();
                for (d, nu) in p.terms().keys() {
                    assert_eq!(nu.weight() + 2 * n * d, a.weight() + b.weight());
                }
            }
        }
    }
}

#[test]
fn gw_invariants_are_symmetric() {
    for n in 1..=4 {
        let r = ring(n);
        let basis = strict_partitions(n);
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    let Some(d) = GWQuery::degree_for(n, a.weight() + b.weight() + c.weight()) else {
                        continue;
                    };
                    let v = r.gw(a, b, c, d).unwrap();
                    assert!(v >= BigInt::zero());
                    for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        assert_eq!(r.gw(x, y, z, d).unwrap(), v, "n={n} {a} {b} {c} d={d}");
                    }
                }
            }
        }
    }
}

#[test]
fn poincare_pairing_is_perfect() {
    for n in 1..=5 {
        let r = ring(n);
        for a in r.basis() {
            for b in r.basis() {
                if a.weight() + b.weight() != n * (n + 1) / 2 {
                    continue;
                }
                let want = if b == dual(&a, n).unwrap() { BigInt::one() } else { BigInt::zero() };
                assert_eq!(r.gw(&a, &b, &sp(&[]), 0).unwrap(), want);
            }
        }
    }
}

#[test]
fn lg_side_exhaustive_to_four() {
    for n in 2..=4 {
        for c in suites::lg_checks(n).unwrap() {
            assert!(c.pass, "{}", c.to_json());
        }
    }
}

#[test]
fn lg_examples() {
    let q = LGQuery::new(2, sp(&[1]), sp(&[1]), sp(&[1]), 1);
    assert_eq!(lg_gw(&q).unwrap(), BigInt::one());
    // σ_{21}³ on LG(3,6) has weight 9 = 6 + 4e, which no e satisfies
    let q = LGQuery::new(4, sp(&[2, 1]), sp(&[2, 1]), sp(&[2, 1]), 1);
    assert!(!q.is_admissible());
    let q = LGQuery::new(4, sp(&[3, 2, 1]), sp(&[2]), sp(&[3, 2, 1]), 2);
    assert!(q.is_admissible());
    assert!(lg_gw(&q).unwrap() >= BigInt::zero());
    let rho = sp(&[2, 1]);
    for mu in strict_partitions(2) {
        for nu in strict_partitions(2) {
            let q = LGQuery::new(3, rho.clone(), mu.clone(), nu.clone(), 1);
            if q.is_admissible() {
                assert_eq!(lg_gw(&q).unwrap(), lg_gw_odd(&rho, &mu, &nu, 1, 3).unwrap());
            }
        }
    }
}

#[test]
fn ogsymmetry_n5_exhaustive() {
    let tuples = correspondence_tuples(5);
    assert!(tuples.len() >= 500);
    for (l, m, v, d, e) in tuples {
        assert!(ogsymmetry_check(&l, &m, &v, d, e, 5).unwrap().holds(), "{l} {m} {v} {d} {e}");
    }
}
