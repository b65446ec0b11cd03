//! Euclidean R⁷ and its G₂ vector cross product.

use nalgebra::SVector;
use rand::Rng;
use rand_distr::StandardNormal;

pub type AmbientVector = SVector<f64, 7>;

/// Oriented triples (i, j, k), zero-based, with eᵢ × eⱼ = eₖ.
const FANO: [[usize; 3]; 7] = [[0, 1, 2], [0, 3, 4], [0, 6, 5], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 5, 4]];

/// Structure constants `c[i][j][k] = ⟨eᵢ × eⱼ, eₖ⟩`.
fn structure_constants() -> &'static [[[f64; 7]; 7]; 7] {
    static TABLE: std::sync::OnceLock<[[[f64; 7]; 7]; 7]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = [[[0.0; 7]; 7]; 7];
        for [i, j, k] in FANO {
            for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                c[a][b][d] = 1.0;
                c[b][a][d] = -1.0;
            }
        }
        c
    })
}

pub fn cross(u: &AmbientVector, v: &AmbientVector) -> AmbientVector {
    let c = structure_constants();
    let mut out = AmbientVector::zeros();
    for i in 0..7 {
        if u[i] == 0.0 {
            continue;
        }
        for j in 0..7 {
            let uv = u[i] * v[j];
            if uv == 0.0 {
                continue;
            }
            for k in 0..7 {
                out[k] += c[i][j][k] * uv;
            }
        }
    }
    out
}

/// The associative 3-form `φ(u, v, w) = ⟨u × v, w⟩`.
pub fn associative(u: &AmbientVector, v: &AmbientVector, w: &AmbientVector) -> f64 {
    cross(u, v).dot(w)
}

pub fn basis(i: usize) -> AmbientVector {
    let mut v = AmbientVector::zeros();
    v[i] = 1.0;
    v
}

/// Uniformly distributed point of the unit sphere.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> AmbientVector {
    loop {
        let v = AmbientVector::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// A constant exterior form on R⁷, stored as a fully antisymmetric tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientForm {
    degree: usize,
    /// indexed by Σ iₖ 7^k over all ordered index tuples
    tensor: Vec<f64>,
}

impl AmbientForm {
    /// Builds `Σ_{i<j<…} c_I e^I` from coefficients in lexicographic order of `I`.
    pub fn from_coefficients(degree: usize, coeffs: &[f64]) -> Self {
        let sets = increasing_tuples(degree);
        assert_eq!(sets.len(), coeffs.len(), "coefficient count for an ambient {degree}-form");
        let mut tensor = vec![0.0; 7usize.pow(degree as u32)];
        for (set, c) in sets.iter().zip(coeffs) {
            for (perm, sign) in permutations(set) {
                tensor[flat(&perm)] = sign * c;
            }
        }
        AmbientForm { degree, tensor }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Self {
        let n = increasing_tuples(degree).len();
        let coeffs: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        Self::from_coefficients(degree, &coeffs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn scale(&self, c: f64) -> Self {
        AmbientForm { degree: self.degree, tensor: self.tensor.iter().map(|t| t * c).collect() }
    }

    pub fn eval(&self, vectors: &[AmbientVector]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        let mut total = 0.0;
        let mut idx = vec![0usize; self.degree];
        for (flat_index, t) in self.tensor.iter().enumerate() {
            if *t == 0.0 {
                continue;
            }
            let mut rest = flat_index;
            for slot in idx.iter_mut() {
                *slot = rest % 7;
                rest /= 7;
            }
            let mut prod = *t;
            for (v, &i) in vectors.iter().zip(&idx) {
                prod *= v[i];
            }
            total += prod;
        }
        total
    }
}

fn flat(idx: &[usize]) -> usize {
    idx.iter().rev().fold(0, |acc, &i| acc * 7 + i)
}

fn increasing_tuples(k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..7 {
            cur.push(i);
            go(i + 1, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(set: &[usize]) -> Vec<(Vec<usize>, f64)> {
    if set.len() <= 1 {
        return vec![(set.to_vec(), 1.0)];
    }
    let mut out = Vec::new();
    for (pos, &first) in set.iter().enumerate() {
        let mut rest = set.to_vec();
        rest.remove(pos);
        let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
        for (mut perm, s) in permutations(&rest) {
            perm.insert(0, first);
            out.push((perm, sign * s));
        }
    }
    out
}
