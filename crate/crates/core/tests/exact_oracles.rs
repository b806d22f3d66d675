use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use ruinlab::exact::{
    eulerian_row, evaluate_points, generating_function_closed, p_explicit, p_recurrence, q_explicit, q_recurrence,
    verify_eulerian_relation, IndexConvention,
};
use ruinlab::{BigRational, RuinState, TableKind};

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Eulerian number by the closed alternating sum, independent of the
/// triangle recurrence.
fn eulerian_closed(n: u64, k: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial(n + 1, j) * BigInt::from(k + 1 - j).pow(n as u32);
        if j % 2 == 0 {
            sum += term
        } else {
            sum -= term
        }
    }
    sum
}

#[test]
fn explicit_sum_matches_dp_up_to_sixty() {
    let table = p_recurrence(60).unwrap();
    let mut worst: f64 = 0.0;
    for s in 1..=60usize {
        for m in 0..=s {
            let exact = p_explicit(m, s - m).unwrap().to_f64().unwrap();
            worst = worst.max((exact - table.get(m, s - m).unwrap()).abs());
        }
    }
    assert!(worst <= 1e-12, "max gap {worst:e}");
}

#[test]
fn explicit_sum_hand_values() {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(p_explicit(2, 1).unwrap(), r(1, 6));
    assert_eq!(p_explicit(0, 5).unwrap(), r(1, 1));
    assert_eq!(p_explicit(10, 10).unwrap(), r(1, 2));
    assert!(p_explicit(0, 0).is_err());
    assert!(p_explicit(30, 31).is_err());
}

#[test]
fn simple_game_log_sum_matches_recurrence() {
    let table = q_recurrence(400).unwrap();
    for s in 1..=400usize {
        for m in (0..=s).step_by(7) {
            let a = q_explicit(m, s - m).unwrap();
            let b = table.get(m, s - m).unwrap();
            assert!((a - b).abs() <= 1e-10, "q({m},{}) {a} vs {b}", s - m);
        }
    }
}

#[test]
fn symmetry_and_range() {
    for kind in [TableKind::Proportional, TableKind::Simple] {
        let t = ruinlab::ProbabilityTable::build(kind, 300).unwrap();
        for (m, n, v) in t.iter() {
            assert!((0.0..=1.0).contains(&v));
            if m >= 1 && n >= 1 {
                let mirror = t.get(n, m).unwrap();
                assert!((v + mirror - 1.0).abs() <= 1e-12, "{kind:?} ({m},{n})");
            }
        }
    }
}

#[test]
fn nondecreasing_in_opponent_units() {
    let t = p_recurrence(500).unwrap();
    for m in 1..250 {
        for n in 0..(500 - m) {
            assert!(t.get(m, n + 1).unwrap() >= t.get(m, n).unwrap(), "({m},{n})");
        }
    }
}

#[test]
fn streaming_matches_dense() {
    let t = p_recurrence(1000).unwrap();
    let pts: Vec<RuinState> = [(480, 520), (3, 0), (0, 3), (999, 1), (1, 999)]
        .into_iter()
        .map(RuinState::from)
        .collect();
    let v = evaluate_points(TableKind::Proportional, &pts).unwrap();
    for (p, v) in pts.iter().zip(v) {
        assert_eq!(v, t.value(*p).unwrap());
    }
}

#[test]
fn generating_function_matches_truncated_sum() {
    let order = 400;
    let t = p_recurrence(order).unwrap();
    let truncated = |x: f64, y: f64| {
        t.iter()
            .map(|(m, n, p)| p * x.powi(m as i32) * y.powi(n as i32))
            .sum::<f64>()
    };
    let points: [(f64, f64); 10] = [
        (0.2, 0.4),
        (0.4, 0.2),
        (0.1, 0.7),
        (0.7, 0.1),
        (0.3, 0.5),
        (0.55, 0.35),
        (0.0, 0.6),
        (0.6, 0.0),
        (0.8, 0.5),
        (0.25, 0.85),
    ];
    for (x, y) in points {
        assert!((x - y).abs() > 0.05);
        let closed = generating_function_closed(x, y).unwrap();
        let sum = truncated(x, y);
        assert!((closed - sum).abs() <= 1e-8, "({x},{y}): {closed} vs {sum}");
    }
    let g = generating_function_closed(0.0, 0.3).unwrap();
    assert!((g - 1.0 / 0.7).abs() < 1e-12);
}

#[test]
fn generating_function_errors() {
    assert!(generating_function_closed(0.3, 0.3 + 1e-7).is_err());
    assert!(generating_function_closed(1.0, 0.3).is_err());
    assert!(generating_function_closed(-0.1, 0.3).is_err());
}

#[test]
fn eulerian_triangle_matches_closed_sum() {
    for n in 1..=15u64 {
        let row = eulerian_row(n as usize);
        for (k, a) in row.iter().enumerate() {
            assert_eq!(*a, eulerian_closed(n, k as u64), "A({n},{k})");
        }
    }
}

#[test]
fn eulerian_relation_through_twelve() {
    let report = verify_eulerian_relation(12).unwrap();
    assert!(report.pass);
    assert_eq!(report.convention, Some(IndexConvention::OneBasedN));
    // independent restatement of the adopted convention
    for s in 2..=12u64 {
        let fact: BigInt = (1..=s).map(BigInt::from).product();
        for n in 1..s {
            let m = s - n;
            let diff =
                p_explicit(m as usize, n as usize).unwrap() - p_explicit(m as usize + 1, n as usize - 1).unwrap();
            let scaled = diff * BigRational::from_integer(fact.clone());
            assert_eq!(
                scaled,
                BigRational::from_integer(eulerian_closed(s, n - 1)),
                "({m},{n})"
            );
        }
    }
}
