//! Independent oracles shared by the integration tests. Nothing here uses the
//! library's Cartan matrices or reflection code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;
use weyl_snow::rootdata::Family;
use weyl_snow::{IntMatrix, RootSystemId};

pub type Q = Ratio<i64>;

/// Simple roots in Euclidean coordinates, scaled by 2 so every entry is an
/// integer. Standard orthonormal-basis realizations.
pub fn simple_roots(id: RootSystemId) -> Vec<Vec<i64>> {
    let n = id.rank();
    let unit = |dim: usize, i: usize, j: Option<usize>, sj: i64| {
        let mut v = vec![0i64; dim];
        v[i] += 2;
        if let Some(j) = j {
            v[j] += 2 * sj;
        }
        v
    };
    match id.family() {
        Family::A => (0..n).map(|i| unit(n + 1, i, Some(i + 1), -1)).collect(),
        Family::B | Family::C | Family::D => {
            let mut roots: Vec<Vec<i64>> =
                (0..n - 1).map(|i| unit(n, i, Some(i + 1), -1)).collect();
            roots.push(match id.family() {
                Family::B => unit(n, n - 1, None, 0),
                Family::C => {
                    let mut v = vec![0; n];
                    v[n - 1] = 4;
                    v
                }
                _ => unit(n, n - 2, Some(n - 1), 1),
            });
            roots
        }
        Family::G => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        Family::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        Family::E => {
            let mut all = vec![
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                vec![2, 2, 0, 0, 0, 0, 0, 0],
            ];
            for k in 0..6 {
                let mut v = vec![0; 8];
                v[k] = -2;
                v[k + 1] = 2;
                all.push(v);
            }
            all.truncate(n);
            all
        }
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `<alpha_i, alpha_j>` = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j) from the
/// Euclidean realization.
pub fn euclidean_cartan(id: RootSystemId) -> Vec<Vec<i64>> {
    let r = simple_roots(id);
    r.iter()
        .map(|a| {
            r.iter()
                .map(|b| {
                    let num = 2 * dot(a, b);
                    let den = dot(b, b);
                    assert_eq!(num % den, 0);
                    num / den
                })
                .collect()
        })
        .collect()
}

fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| a[r][col] != Q::from(0))
            .expect("singular Gram matrix");
        a.swap(col, p);
        b.swap(col, p);
        let inv = Q::from(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        b[col] *= inv;
        for r in 0..n {
            if r != col && a[r][col] != Q::from(0) {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= *p * f;
                }
                let t = b[col] * f;
                b[r] -= t;
            }
        }
    }
    b
}

/// Reflects the weight with coordinates `m` (`m_j = <lambda, alpha_j^vee>`)
/// in `alpha_i` by realizing it as a Euclidean vector in the span of the
/// simple roots, reflecting, and reading the coordinates back.
pub fn euclidean_reflect(id: RootSystemId, m: &[i64], i: usize) -> Vec<i64> {
    let r = simple_roots(id);
    let n = r.len();
    let gram: Vec<Vec<Q>> = r
        .iter()
        .map(|a| r.iter().map(|b| Q::from(dot(a, b))).collect())
        .collect();
    // (lambda, alpha_j) = m_j (alpha_j, alpha_j) / 2
    let rhs: Vec<Q> = (0..n)
        .map(|j| Q::new(m[j] * dot(&r[j], &r[j]), 2))
        .collect();
    let x = solve(gram.clone(), rhs);
    let ai = &r[i - 1];
    let inner_i: Q = (0..n).map(|k| x[k] * gram[k][i - 1]).sum();
    let coef = inner_i * Q::from(2) / Q::from(dot(ai, ai));
    let mut y = x.clone();
    y[i - 1] -= coef;
    (0..n)
        .map(|j| {
            let inner: Q = (0..n).map(|k| y[k] * gram[k][j]).sum();
            let c = inner * Q::from(2) / Q::from(dot(&r[j], &r[j]));
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Orbit of `mu` by breadth-first search over Euclidean reflections.
pub fn brute_force_orbit(id: RootSystemId, mu: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(mu.to_vec());
    queue.push_back(mu.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 1..=id.rank() {
            let v = euclidean_reflect(id, &w, i);
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Reflection on row vectors in fundamental-weight coordinates, built from
/// the Euclidean Cartan matrix.
pub fn euclidean_reflection_matrix(id: RootSystemId, i: usize) -> IntMatrix {
    let c = euclidean_cartan(id);
    let n = c.len();
    let rows: Vec<Vec<i32>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|col| {
                    let delta = i32::from(r == col);
                    if r == i - 1 {
                        delta - c[r][col] as i32
                    } else {
                        delta
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

/// All group matrices, by closing the generators under multiplication.
pub fn brute_force_group(id: RootSystemId) -> Vec<IntMatrix> {
    let gens: Vec<IntMatrix> = (1..=id.rank())
        .map(|i| euclidean_reflection_matrix(id, i))
        .collect();
    let id_m = IntMatrix::identity(id.rank());
    let mut seen: HashSet<IntMatrix> = HashSet::from([id_m.clone()]);
    let mut all = vec![id_m.clone()];
    let mut queue = VecDeque::from([id_m]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = m.mul(g).unwrap();
            if seen.insert(p.clone()) {
                all.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    all
}

pub fn degrees(id: RootSystemId) -> Vec<u64> {
    let n = id.rank() as u64;
    match id.family() {
        Family::A => (2..=n + 1).collect(),
        Family::B | Family::C => (1..=n).map(|k| 2 * k).collect(),
        Family::D => {
            let mut d: Vec<u64> = (1..n).map(|k| 2 * k).collect();
            d.push(n);
            d
        }
        Family::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    }
}

/// Coefficients of the Poincare polynomial, the product of
/// `1 + q + ... + q^(d-1)` over the degrees: entry `k` counts elements of
/// length `k`.
pub fn poincare_levels(id: RootSystemId) -> Vec<u64> {
    let mut poly = vec![1u64];
    for d in degrees(id) {
        let mut next = vec![0u64; poly.len() + d as usize - 1];
        for (k, &c) in poly.iter().enumerate() {
            for s in 0..d as usize {
                next[k + s] += c;
            }
        }
        poly = next;
    }
    poly
}

pub fn id(name: &str) -> RootSystemId {
    name.parse().unwrap()
}

pub fn matrix_order(m: &IntMatrix) -> u64 {
    let mut p = m.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = p.mul(m).unwrap();
        k += 1;
    }
    k
}

/// Conjugacy classes by conjugating with every group element. Returns class
/// sizes paired with element orders, sorted.
pub fn brute_force_classes(group: &[IntMatrix]) -> Vec<(usize, u64)> {
    let inverse = |g: &IntMatrix| {
        group
            .iter()
            .find(|h| g.mul(h).unwrap().is_identity())
            .unwrap()
            .clone()
    };
    let pairs: Vec<(IntMatrix, IntMatrix)> =
        group.iter().map(|g| (g.clone(), inverse(g))).collect();
    let mut assigned: HashSet<IntMatrix> = HashSet::new();
    let mut out = Vec::new();
    for x in group {
        if assigned.contains(x) {
            continue;
        }
        let class: HashSet<IntMatrix> = pairs
            .iter()
            .map(|(g, gi)| g.mul(x).unwrap().mul(gi).unwrap())
            .collect();
        out.push((class.len(), matrix_order(x)));
        assigned.extend(class);
    }
    out.sort();
    out
}
