//! The centroid classifier against a brute-force oracle in exact integer
//! arithmetic.
//!
//! For bipolar samples every centroid and dot product is an integer, so
//! `cos(q, M_i) > cos(q, M_j)` can be decided without floating point by
//! comparing `dot_i·|dot_i|·‖M_j‖²` with `dot_j·|dot_j|·‖M_i‖²` (the common
//! factor ‖q‖ cancels). A zero centroid scores 0; ties go to the lowest index.

use std::cmp::Ordering;

use hdc::{CentroidModel, Hv32, Seed};
use rand::Rng;

struct Score {
    /// `dot·|dot|`, the signed square of the dot product.
    num: i128,
    /// `‖M‖²`, or 1 for a zero centroid (whose `num` is 0).
    den: i128,
}

fn compare(a: &Score, b: &Score) -> Ordering {
    (a.num * b.den).cmp(&(b.num * a.den))
}

fn oracle(samples: &[(Vec<i64>, usize)], k: usize, query: &[i64]) -> usize {
    let d = query.len();
    let mut centroids = vec![vec![0i64; d]; k];
    for (x, c) in samples {
        for (m, v) in centroids[*c].iter_mut().zip(x) {
            *m += v;
        }
    }
    let scores: Vec<Score> = centroids
        .iter()
        .map(|m| {
            let dot: i128 = m.iter().zip(query).map(|(a, b)| (*a * *b) as i128).sum();
            let norm: i128 = m.iter().map(|a| (*a * *a) as i128).sum();
            if norm == 0 {
                Score { num: 0, den: 1 }
            } else {
                Score {
                    num: dot * dot.abs(),
                    den: norm,
                }
            }
        })
        .collect();
    let mut best = 0;
    for i in 1..k {
        if compare(&scores[i], &scores[best]) == Ordering::Greater {
            best = i;
        }
    }
    best
}

fn to_ints(v: &Hv32) -> Vec<i64> {
    v.as_slice().iter().map(|&x| x as i64).collect()
}

#[test]
fn predict_matches_exact_oracle() {
    for s in 0..400 {
        let mut rng = Seed(s).rng();
        let d = rng.random_range(1..=32);
        let k = rng.random_range(1..=5);
        let n = rng.random_range(0..=20);
        let samples: Vec<(Hv32, usize)> = (0..n)
            .map(|_| (Hv32::random(d, &mut rng), rng.random_range(0..k)))
            .collect();
        let labels: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
        // `new` + `add` rather than `fit`, so classes may stay empty
        let mut model = CentroidModel::new(labels, d).unwrap();
        for (x, c) in &samples {
            model.add(x, *c).unwrap();
        }
        let int_samples: Vec<(Vec<i64>, usize)> =
            samples.iter().map(|(x, c)| (to_ints(x), *c)).collect();
        for _ in 0..5 {
            let q = Hv32::random(d, &mut rng);
            let expected = oracle(&int_samples, k, &to_ints(&q));
            let got = model.predict(&q).unwrap().class;
            assert_eq!(got, expected, "seed {s}, d={d}, k={k}, n={n}");
        }
    }
}

#[test]
fn oracle_agrees_on_handmade_ties() {
    // two identical centroids tie exactly; the lower index wins
    let a = vec![1, -1, 1, 1];
    let samples = vec![(a.clone(), 0), (a.clone(), 1)];
    assert_eq!(oracle(&samples, 2, &a), 0);
    let mut model = CentroidModel::new(vec!["x".into(), "y".into()], 4).unwrap();
    let hv = Hv32::from_vec(a.iter().map(|&x| x as f32).collect());
    model.add(&hv, 0).unwrap();
    model.add(&hv, 1).unwrap();
    assert_eq!(model.predict(&hv).unwrap().class, 0);
}
