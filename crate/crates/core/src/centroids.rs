//! Centroids of the k-skeletons of the standard simplex.
//!
//! The standard simplex in `R^N` is the convex hull of `0, e_1, …, e_N`. Its
//! k-skeleton is the union of its k-dimensional faces. The centroid of that
//! union, weighted by k-volume, is invariant under permuting coordinates, so
//! it equals `c · (e_1 + … + e_N)` for one scalar `c`. That scalar is what
//! this module computes, exactly:
//!
//! ```text
//! c(N, k) = (1/N) · (k + (N−k)√(k+1)) / ((k+1) + (N−k)√(k+1))
//! ```
//!
//! [`skeleton_centroid_oracle`] reaches the same value without the formula,
//! by enumerating every face and measuring it with its Gram determinant.
//!
//! # Face volumes
//!
//! A k-face spanned by `v_0, …, v_k` has k-volume `√det(G) / k!`, where
//! `G_ij = (v_i − v_0)·(v_j − v_0)` for `i, j ≥ 1`. There are two kinds of
//! face:
//!
//! * faces through the origin, with edge vectors `e_{i_1}, …, e_{i_k}`. Then
//!   `G = I` and the volume is `1/k!`.
//! * faces on `k+1` basis vectors, with edge vectors `e_{i_j} − e_{i_0}`. Then
//!   `G = I + J` (`J` all ones), `det G = k + 1`, and the volume is
//!   `√(k+1)/k!`.

use std::collections::BTreeMap;
use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{sqrt_canonical, square_free_split, BigRational, QuadraticNumber};
use crate::{par, Error, Result};

/// Largest dimension the face-enumeration oracle accepts.
pub const ORACLE_MAX_DIMENSION: u64 = 16;

/// Exact centroid of one skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidRecord {
    pub dimension: u64,
    pub skeleton: u64,
    /// Common coordinate `c` with `C_{k,N} = c · (e_1 + … + e_N)`.
    pub coefficient: QuadraticNumber,
    pub approx: String,
}

impl CentroidRecord {
    pub fn new(dimension: u64, skeleton: u64, digits: usize) -> Result<Self> {
        let coefficient = centroid_coefficient(dimension, skeleton)?;
        let approx = coefficient.to_decimal(digits);
        Ok(CentroidRecord { dimension, skeleton, coefficient, approx })
    }

    /// The full centroid vector `(c, …, c)` of length `N`.
    pub fn vector(&self) -> Vec<QuadraticNumber> {
        vec![self.coefficient.clone(); self.dimension as usize]
    }
}

fn check_args(n: u64, k: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if k > n {
        return Err(Error::domain(format!("skeleton dimension {k} exceeds N = {n}")));
    }
    Ok(())
}

/// Closed-form centroid coordinate `c(N, k)`.
///
/// With `m = N − k` and `√(k+1) = o·√d`, multiplying through by the
/// conjugate of the denominator gives
///
/// ```text
/// c = [(k+1)(k − m²) + m·o·√d] / [N (k+1)(k+1 − m²)]
/// ```
///
/// which is evaluated in `i128` when it fits. When `d = 1` the value is
/// rational and computed directly.
pub fn centroid_coefficient(n: u64, k: u64) -> Result<QuadraticNumber> {
    check_args(n, k)?;
    if n > FAST_PATH_MAX_DIMENSION {
        return centroid_coefficient_field(n, k);
    }
    let (n, k) = (n as i128, k as i128);
    let (o, d) = square_free_split((k + 1) as u64);
    let (o, d) = (o as i128, d as i128);
    let m = n - k;
    if d == 1 {
        return Ok(QuadraticNumber::rational(reduced(k + m * o, n * (k + 1 + m * o))));
    }
    // d > 1 so k+1 is not a perfect square and k+1 − m² ≠ 0
    let gap = k + 1 - m * m;
    let p = reduced(k - m * m, n * gap);
    let q = reduced(m * o, n * (k + 1) * gap);
    Ok(QuadraticNumber::from_square_free(p, q, BigInt::from(d)))
}

// Keeps every intermediate of the fast path well inside i128.
const FAST_PATH_MAX_DIMENSION: u64 = 1 << 24;

fn reduced(num: i128, den: i128) -> BigRational {
    let g = num.gcd(&den);
    let (mut num, mut den) = (num / g, den / g);
    if den < 0 {
        num = -num;
        den = -den;
    }
    BigRational::new_raw(BigInt::from(num), BigInt::from(den))
}

/// The same coordinate evaluated with generic field arithmetic in `Q(√(k+1))`.
pub fn centroid_coefficient_field(n: u64, k: u64) -> Result<QuadraticNumber> {
    check_args(n, k)?;
    let root = QuadraticNumber::sqrt(k + 1)?;
    let spread = root.scale(&BigRational::from_integer(BigInt::from(n - k)));
    let num = QuadraticNumber::integer(k).try_add(&spread)?;
    let den = QuadraticNumber::integer(k + 1).try_add(&spread)?;
    let ratio = num.try_div(&den)?;
    Ok(ratio.scale(&BigRational::new(BigInt::one(), BigInt::from(n))))
}

/// k-volume of a face of the standard simplex: `1/k!` through the origin,
/// `√(k+1)/k!` otherwise.
pub fn face_volume(k: u64, contains_origin: bool) -> QuadraticNumber {
    let inv_fact = BigRational::new(BigInt::one(), factorial(k));
    if contains_origin {
        QuadraticNumber::rational(inv_fact)
    } else {
        QuadraticNumber::sqrt(k + 1)
            .expect("k + 1 >= 1")
            .scale(&inv_fact)
    }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * j)
}

// Determinant of a small integer matrix by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..n - 1 {
        if m[i][i] == 0 {
            match (i + 1..n).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[n - 1][n - 1]
}

// Vertex 0 is the origin, vertex i ≥ 1 is e_i.
fn vertex_dot(a: usize, b: usize) -> i128 {
    i128::from(a != 0 && a == b)
}

/// k-volume of the face on the given vertex indices, from its Gram determinant.
fn gram_face_volume(face: &[usize]) -> QuadraticNumber {
    let k = face.len() - 1;
    let base = face[0];
    let edge_dot = |i: usize, j: usize| {
        vertex_dot(i, j) - vertex_dot(i, base) - vertex_dot(base, j) + vertex_dot(base, base)
    };
    let gram: Vec<Vec<i128>> = face[1..]
        .iter()
        .map(|&i| face[1..].iter().map(|&j| edge_dot(i, j)).collect())
        .collect();
    let det = bareiss_det(gram);
    let (outside, d) = sqrt_canonical(&BigInt::from(det)).expect("Gram matrix of a face is positive definite");
    let coeff = BigRational::new(outside, factorial(k as u64));
    QuadraticNumber::new(BigRational::zero(), coeff, d).expect("square-free radicand")
}

/// Full centroid vector of the k-skeleton by enumerating all `C(N+1, k+1)`
/// faces. Each face is weighted by its Gram-determinant volume and
/// contributes its vertex average.
pub fn skeleton_centroid_vector_oracle(n: u64, k: u64) -> Result<Vec<QuadraticNumber>> {
    check_args(n, k)?;
    if n > ORACLE_MAX_DIMENSION {
        return Err(Error::resource(format!(
            "face enumeration is limited to N <= {ORACLE_MAX_DIMENSION}, got {n}"
        )));
    }
    let dim = n as usize;
    let faces: Vec<Vec<usize>> = (0..=dim).combinations(k as usize + 1).collect();
    let weights = par::map_slice(&faces, |face| gram_face_volume(face));

    let mut total = QuadraticNumber::zero();
    // mass[i] = total weight of faces having e_{i+1} as a vertex
    let mut mass = vec![QuadraticNumber::zero(); dim];
    for (face, w) in faces.iter().zip(&weights) {
        total = total.try_add(w)?;
        for &v in face.iter().filter(|&&v| v != 0) {
            mass[v - 1] = mass[v - 1].try_add(w)?;
        }
    }
    let inv = BigRational::new(BigInt::one(), BigInt::from(k + 1));
    mass.iter()
        .map(|m| m.scale(&inv).try_div(&total))
        .collect()
}

/// Common coordinate of the k-skeleton centroid via face enumeration.
pub fn skeleton_centroid_oracle(n: u64, k: u64) -> Result<QuadraticNumber> {
    let v = skeleton_centroid_vector_oracle(n, k)?;
    Ok(v.into_iter().next().expect("N >= 1"))
}

/// Groups of intermediate skeletons `1 ≤ k ≤ N−1` sharing a centroid,
/// keeping only groups of two or more. Each group is sorted and the groups
/// are ordered by their smallest member.
pub fn coincidence_groups(n: u64) -> Result<Vec<Vec<u64>>> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let mut by_value: HashMap<QuadraticNumber, Vec<u64>> = HashMap::new();
    for k in 1..n {
        by_value.entry(centroid_coefficient(n, k)?).or_default().push(k);
    }
    let mut groups: Vec<Vec<u64>> = by_value.into_values().filter(|g| g.len() > 1).collect();
    groups.sort();
    Ok(groups)
}

/// All pairs `k1 < k2` of intermediate skeletons with equal centroids, sorted.
pub fn coincident_pairs(n: u64) -> Result<Vec<(u64, u64)>> {
    let mut pairs: Vec<(u64, u64)> = coincidence_groups(n)?
        .iter()
        .flat_map(|g| g.iter().copied().tuple_combinations())
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// Centroid coordinates of every skeleton `0..=N`, keyed by `k`.
pub fn all_centroids(n: u64) -> Result<BTreeMap<u64, QuadraticNumber>> {
    (0..=n).map(|k| Ok((k, centroid_coefficient(n, k)?))).collect()
}

pub type Point2 = [f64; 2];

/// The three classical centroids of a triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleCentroids {
    pub vertex: Point2,
    pub edge: Point2,
    pub solid: Point2,
}

/// Vertex average, perimeter-weighted edge centroid and area centroid.
pub fn triangle_centroids(a: Point2, b: Point2, c: Point2) -> Result<TriangleCentroids> {
    if a.iter().chain(&b).chain(&c).any(|x| !x.is_finite()) {
        return Err(Error::domain("triangle vertices must be finite"));
    }
    let dist = |p: Point2, q: Point2| (p[0] - q[0]).hypot(p[1] - q[1]);
    let (la, lb, lc) = (dist(b, c), dist(c, a), dist(a, b));
    let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let scale = la.max(lb).max(lc);
    if cross.abs() <= 1e-12 * scale * scale {
        return Err(Error::domain("degenerate (collinear) triangle"));
    }
    let vertex = [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0];
    // shoelace area centroid, computed independently of the vertex average
    let solid = polygon_area_centroid(&[a, b, c]);
    let mid = |p: Point2, q: Point2, w: f64| [w * (p[0] + q[0]) / 2.0, w * (p[1] + q[1]) / 2.0];
    let (ma, mb, mc) = (mid(b, c, la), mid(c, a, lb), mid(a, b, lc));
    let per = la + lb + lc;
    let edge = [(ma[0] + mb[0] + mc[0]) / per, (ma[1] + mb[1] + mc[1]) / per];
    Ok(TriangleCentroids { vertex, edge, solid })
}

fn polygon_area_centroid(pts: &[Point2]) -> Point2 {
    let (mut a2, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for (p, q) in pts.iter().circular_tuple_windows() {
        let w = p[0] * q[1] - q[0] * p[1];
        a2 += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [cx / (3.0 * a2), cy / (3.0 * a2)]
}
