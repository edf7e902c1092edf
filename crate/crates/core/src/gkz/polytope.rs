//! Exact convex hulls of integer point sets by the double-description method, together with
//! the face lattice and normalized volume.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ratmat, snf, IntMat, Rat};

pub const MAX_DIM: usize = 8;
pub const MAX_POINTS: usize = 32;

/// `normal · x <= offset`, with `(normal, offset)` primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Columns of the source matrix lying on the facet.
    pub points: Vec<usize>,
}

impl Facet {
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        &self.offset - dot(&self.normal, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub points: Vec<Vec<BigInt>>,
    /// One column index per distinct vertex, ascending.
    pub vertex_indices: Vec<usize>,
    pub facets: Vec<Facet>,
    /// Nonempty faces as sets of vertex indices, including the polytope itself.
    pub faces: Vec<Vec<usize>>,
}

impl Polytope {
    pub fn vertices(&self) -> Vec<Vec<BigInt>> {
        self.vertex_indices
            .iter()
            .map(|&i| self.points[i].clone())
            .collect()
    }

    /// Dimension of the face spanned by the given vertex indices.
    pub fn face_dim(&self, face: &[usize]) -> usize {
        affine_rank(face.iter().map(|&i| &self.points[i]))
    }

    pub fn proper_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        let all = self.vertex_indices.len();
        self.faces.iter().filter(move |f| f.len() < all)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn lift(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(p.len() + 1);
    v.push(BigInt::from(1));
    v.extend(p.iter().cloned());
    v
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

fn int_rank(rows: &[&Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let owned: Vec<Vec<BigInt>> = rows.iter().map(|r| (*r).clone()).collect();
    IntMat::from_rows(cols, &owned).rank()
}

/// Dimension of the affine hull.
fn affine_rank<'a>(pts: impl Iterator<Item = &'a Vec<BigInt>>) -> usize {
    let lifted: Vec<Vec<BigInt>> = pts.map(|p| lift(p)).collect();
    if lifted.is_empty() {
        return 0;
    }
    let cols = lifted[0].len();
    IntMat::from_rows(cols, &lifted).rank().saturating_sub(1)
}

struct Ray {
    v: Vec<BigInt>,
}

/// Extreme rays of `{h : q_i·h >= 0}` for lifted points spanning the whole space.
fn double_description(q: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let dim = q[0].len();
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..q.len() {
        let mut trial: Vec<&Vec<BigInt>> = basis.iter().map(|&j| &q[j]).collect();
        trial.push(&q[i]);
        if int_rank(&trial, dim) == trial.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    debug_assert_eq!(basis.len(), dim);
    let qk: Vec<Vec<Rat>> = basis
        .iter()
        .map(|&i| q[i].iter().map(|x| Rat::from(x.clone())).collect())
        .collect();
    let inv = ratmat::solve(&qk, &ratmat::identity(dim)).expect("basis rows are independent");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|c| {
            let col: Vec<Rat> = inv.iter().map(|row| row[c].clone()).collect();
            let l = col
                .iter()
                .fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
            let ints = col
                .iter()
                .map(|x| (x * &Rat::from(l.clone())).to_integer().expect("cleared"))
                .collect();
            Ray { v: primitive(ints) }
        })
        .collect();
    let mut processed: Vec<usize> = basis.clone();
    for i in 0..q.len() {
        if basis.contains(&i) {
            continue;
        }
        let s: Vec<BigInt> = rays.iter().map(|r| dot(&q[i], &r.v)).collect();
        if s.iter().all(|x| !x.is_negative()) {
            processed.push(i);
            continue;
        }
        let zero_set = |r: &Ray| -> BTreeSet<usize> {
            processed
                .iter()
                .copied()
                .filter(|&j| dot(&q[j], &r.v).is_zero())
                .collect()
        };
        let zeros: Vec<BTreeSet<usize>> = rays.iter().map(zero_set).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (k, r) in rays.iter().enumerate() {
            if !s[k].is_negative() {
                next.push(Ray { v: r.v.clone() });
            }
        }
        for (a, ra) in rays.iter().enumerate() {
            if !s[a].is_positive() {
                continue;
            }
            for (b, rb) in rays.iter().enumerate() {
                if !s[b].is_negative() {
                    continue;
                }
                let common: Vec<&Vec<BigInt>> =
                    zeros[a].intersection(&zeros[b]).map(|&j| &q[j]).collect();
                if common.len() + 2 < dim || int_rank(&common, dim) != dim - 2 {
                    continue;
                }
                let v: Vec<BigInt> = ra
                    .v
                    .iter()
                    .zip(&rb.v)
                    .map(|(x, y)| &s[a] * y - &s[b] * x)
                    .collect();
                next.push(Ray { v: primitive(v) });
            }
        }
        rays = next;
        processed.push(i);
    }
    let set: BTreeSet<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    set.into_iter().collect()
}

fn columns_of(a: &IntMat) -> Vec<Vec<BigInt>> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

/// Convex hull of the columns of `a`.
pub fn convex_hull(a: &IntMat) -> Result<Polytope> {
    let d = a.rows();
    let n = a.cols();
    if d > MAX_DIM || n > MAX_POINTS {
        return Err(Error::Size(format!(
            "hull of {n} points in R^{d} exceeds the limits d <= {MAX_DIM}, n <= {MAX_POINTS}"
        )));
    }
    if n == 0 {
        return Err(Error::Invalid("convex hull of an empty point set".into()));
    }
    let points = columns_of(a);
    let adim = affine_rank(points.iter());
    if adim < d {
        return Err(Error::DegenerateHull {
            affine_dim: adim,
            ambient: d,
        });
    }
    if d == 0 {
        return Ok(Polytope {
            dim: 0,
            points,
            vertex_indices: vec![0],
            facets: Vec::new(),
            faces: vec![vec![0]],
        });
    }
    let lifted: Vec<Vec<BigInt>> = points.iter().map(|p| lift(p)).collect();
    let rays = double_description(&lifted);
    let mut facets: Vec<Facet> = rays
        .iter()
        .map(|h| Facet {
            normal: h[1..].iter().map(|x| -x).collect(),
            offset: h[0].clone(),
            points: (0..n).filter(|&i| dot(&lifted[i], h).is_zero()).collect(),
        })
        .collect();
    facets.sort();

    let mut vertex_indices = Vec::new();
    for i in 0..n {
        if points[..i].contains(&points[i]) {
            continue;
        }
        let normals: Vec<&Vec<BigInt>> = rays
            .iter()
            .filter(|h| dot(&lifted[i], h).is_zero())
            .collect();
        if int_rank(&normals, d + 1) == d {
            vertex_indices.push(i);
        }
    }

    let vset: BTreeSet<usize> = vertex_indices.iter().copied().collect();
    let facet_vsets: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| f.points.iter().copied().filter(|i| vset.contains(i)).collect())
        .collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(vertex_indices.clone());
    let mut frontier: Vec<BTreeSet<usize>> = facet_vsets.clone();
    while let Some(f) = frontier.pop() {
        if f.is_empty() || !faces.insert(f.iter().copied().collect()) {
            continue;
        }
        for g in &facet_vsets {
            let meet: BTreeSet<usize> = f.intersection(g).copied().collect();
            if meet.len() < f.len() && !meet.is_empty() {
                frontier.push(meet);
            }
        }
    }
    Ok(Polytope {
        dim: d,
        points,
        vertex_indices,
        facets,
        faces: faces.into_iter().collect(),
    })
}

fn pulling_triangulation(
    poly: &Polytope,
    face: &[usize],
    dims: &HashMap<Vec<usize>, usize>,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(face) {
        return t.clone();
    }
    let k = dims[face];
    let out = if k == 0 {
        vec![vec![face[0]]]
    } else {
        let apex = face[0];
        let mut simplices = Vec::new();
        for g in &poly.faces {
            if dims[g] + 1 != k || g.contains(&apex) || !g.iter().all(|v| face.contains(v)) {
                continue;
            }
            for mut s in pulling_triangulation(poly, g, dims, memo) {
                s.insert(0, apex);
                simplices.push(s);
            }
        }
        simplices
    };
    memo.insert(face.to_vec(), out.clone());
    out
}

/// Full-dimensional simplices, as column indices, triangulating the polytope.
pub fn triangulate(poly: &Polytope) -> Vec<Vec<usize>> {
    let dims: HashMap<Vec<usize>, usize> = poly
        .faces
        .iter()
        .map(|f| (f.clone(), poly.face_dim(f)))
        .collect();
    let mut memo = HashMap::new();
    pulling_triangulation(poly, &poly.vertex_indices, &dims, &mut memo)
}

/// `|det(p_1 − p_0, …, p_d − p_0)|`
pub fn simplex_normalized_volume(points: &[&Vec<BigInt>]) -> BigInt {
    let d = points.len() - 1;
    if d == 0 {
        return BigInt::from(1);
    }
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(x, y)| x - y).collect())
        .collect();
    IntMat::from_rows(d, &rows).det().abs()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeReport {
    /// `d!·vol(Δ)`; the lattice-normalized volume and holonomic rank.
    pub normalized: Rat,
    /// Euclidean volume of Δ in `R^d`.
    pub euclidean: Rat,
    /// `n!·vol(Δ)` with n the number of columns, the formula read literally.
    pub literal: Rat,
    pub simplices: usize,
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

pub fn volume_report(a: &IntMat) -> Result<VolumeReport> {
    let poly = convex_hull(a)?;
    let simplices = triangulate(&poly);
    let total: BigInt = simplices
        .iter()
        .map(|s| {
            let pts: Vec<&Vec<BigInt>> = s.iter().map(|&i| &poly.points[i]).collect();
            simplex_normalized_volume(&pts)
        })
        .sum();
    let normalized = Rat::from(total);
    let euclidean = &normalized / &Rat::from(factorial(poly.dim));
    let literal = &euclidean * &Rat::from(factorial(a.cols()));
    Ok(VolumeReport {
        normalized,
        euclidean,
        literal,
        simplices: simplices.len(),
    })
}

/// `d!·vol(Δ)` for the hull Δ of the columns of `a`.
pub fn normalized_volume(a: &IntMat) -> Result<Rat> {
    Ok(volume_report(a)?.normalized)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// `ℤA = ℤ^d`
    pub lattice_full: bool,
    /// Columns on every proper face are linearly independent.
    pub face_condition: bool,
    /// Column indices on the first facet whose columns are dependent.
    pub failing_face: Option<Vec<usize>>,
    pub origin_interior: bool,
    /// Set when the hull is lower-dimensional, in which case (ii) and (iii) fail.
    pub degenerate_affine_dim: Option<usize>,
}

impl AssumptionReport {
    pub fn passes(&self) -> bool {
        self.lattice_full && self.face_condition && self.origin_interior
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.lattice_full {
            Some("(i) the columns do not generate Z^d")
        } else if !self.face_condition {
            Some("(ii) the columns on a proper face are linearly dependent")
        } else if !self.origin_interior {
            Some("(iii) the origin is not an interior point of the hull")
        } else {
            None
        }
    }
}

pub fn check_assumptions(a: &IntMat) -> Result<AssumptionReport> {
    let (d, n) = (a.rows(), a.cols());
    if d >= n {
        return Err(Error::Shape { rows: d, cols: n });
    }
    let s = snf(a);
    let lattice_full = s.rank() == d && s.diagonal().iter().all(|x| *x == BigInt::from(1));
    let poly = match convex_hull(a) {
        Ok(p) => p,
        Err(Error::DegenerateHull { affine_dim, .. }) => {
            return Ok(AssumptionReport {
                lattice_full,
                face_condition: false,
                failing_face: None,
                origin_interior: false,
                degenerate_affine_dim: Some(affine_dim),
            })
        }
        Err(e) => return Err(e),
    };
    // every proper face lies in a facet, and subsets of independent sets are independent
    let failing_face = poly
        .facets
        .iter()
        .find(|f| a.select_columns(&f.points).rank() != f.points.len())
        .map(|f| f.points.clone());
    let origin_interior = poly.facets.iter().all(|f| f.offset.is_positive());
    Ok(AssumptionReport {
        lattice_full,
        face_condition: failing_face.is_none(),
        failing_face,
        origin_interior,
        degenerate_affine_dim: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn eq31(n: usize) -> IntMat {
        let mut rows = Vec::new();
        for r in 0..n - 1 {
            let mut row = vec![0i64; n];
            row[0] = 1;
            row[r + 1] = -1;
            rows.push(row);
        }
        IntMat::from_rows(n, &rows)
    }

    #[test]
    fn segment() {
        let p = convex_hull(&IntMat::from_i64(&[&[1, -1]])).unwrap();
        assert_eq!(p.facets.len(), 2);
        let pairs: Vec<_> = p.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        assert!(pairs.contains(&(bi(&[1]), BigInt::from(1))));
        assert!(pairs.contains(&(bi(&[-1]), BigInt::from(1))));
    }

    #[test]
    fn triangle_and_square() {
        let t = convex_hull(&eq31(3)).unwrap();
        assert_eq!(t.facets.len(), 3);
        assert_eq!(t.vertex_indices, vec![0, 1, 2]);
        // 3 edges, 3 vertices, the triangle itself
        assert_eq!(t.faces.len(), 7);
        let sq = convex_hull(&IntMat::from_i64(&[&[1, 1, -1, -1], &[1, -1, 1, -1]])).unwrap();
        assert_eq!(sq.facets.len(), 4);
        assert_eq!(volume_report(&IntMat::from_i64(&[&[1, 1, -1, -1], &[1, -1, 1, -1]])).unwrap().normalized, Rat::from(8));
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let a = IntMat::from_i64(&[&[0, 2, 0, -2, 0, 1], &[2, 0, -2, 0, 0, 0]]);
        let p = convex_hull(&a).unwrap();
        assert_eq!(p.vertex_indices, vec![0, 1, 2, 3]);
        assert_eq!(p.facets.len(), 4);
        assert!(p.facets.iter().all(|f| !f.points.contains(&5) && !f.points.contains(&4)));
    }

    #[test]
    fn degenerate_rejected() {
        let a = IntMat::from_i64(&[&[1, 2, 3], &[1, 2, 3]]);
        match convex_hull(&a).unwrap_err() {
            Error::DegenerateHull { affine_dim, ambient } => assert_eq!((affine_dim, ambient), (1, 2)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&IntMat::from_i64(&[&[1, -1]])).unwrap(), Rat::from(2));
        let simplex3 = IntMat::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(normalized_volume(&simplex3).unwrap(), Rat::from(1));
        for n in 2..=6 {
            assert_eq!(normalized_volume(&eq31(n)).unwrap(), Rat::from(n as i64));
        }
        // the 3-cube [-1,1]^3 has volume 8, so 3!·8
        let mut cube = vec![Vec::new(); 3];
        for s in 0..8 {
            for (k, row) in cube.iter_mut().enumerate() {
                row.push(if s >> k & 1 == 1 { 1i64 } else { -1 });
            }
        }
        assert_eq!(normalized_volume(&IntMat::from_rows(8, &cube)).unwrap(), Rat::from(48));
    }

    #[test]
    fn point_in_zero_dimensions() {
        let a = IntMat::zeros(0, 1);
        let r = volume_report(&a).unwrap();
        assert_eq!(r.normalized, Rat::from(1));
    }

    #[test]
    fn assumptions_examples() {
        let ok = check_assumptions(&eq31(3)).unwrap();
        assert!(ok.passes());
        let idx2 = check_assumptions(&IntMat::from_i64(&[&[2, -2]])).unwrap();
        assert!(!idx2.lattice_full);
        let off = check_assumptions(&IntMat::from_i64(&[&[1, 2]])).unwrap();
        assert!(off.lattice_full && !off.origin_interior);
        // three collinear columns on the edge x = 1 break (ii)
        let a = IntMat::from_i64(&[&[1, 1, 1, -1], &[1, 0, -1, 0]]);
        let r = check_assumptions(&a).unwrap();
        assert!(!r.face_condition);
        assert_eq!(r.failing_face, Some(vec![0, 1, 2]));
        assert_eq!(check_assumptions(&IntMat::identity(2)).unwrap_err().kind(), "shape");
    }

    #[test]
    fn size_limit() {
        let a = IntMat::zeros(9, 10);
        assert_eq!(convex_hull(&a).unwrap_err().kind(), "size");
    }
}
