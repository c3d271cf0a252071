use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One attention head: `W_O` is `d×m`, `W_V`, `W_K`, `W_Q` are `m×d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Head {
    pub w_o: DMatrix<f64>,
    pub w_v: DMatrix<f64>,
    pub w_k: DMatrix<f64>,
    pub w_q: DMatrix<f64>,
}

/// A transformer block acting on `d×n` matrices whose columns are tokens:
///
/// ```text
/// Attn(X) = X + Σ_i W_O^i W_V^i X · softmax[(W_K^i X)ᵀ W_Q^i X]
/// FF(X)   = A + W_2 · ReLU(W_1 A + b_1 1ᵀ),  A = Attn(X)
/// ```
///
/// with the softmax taken down each column.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformerBlock {
    pub dim: usize,
    pub heads: Vec<Head>,
    pub w1: DMatrix<f64>,
    pub b1: DVector<f64>,
    pub w2: DMatrix<f64>,
}

impl TransformerBlock {
    pub fn zero(dim: usize, heads: usize, head_size: usize, hidden: usize) -> Self {
        let head = Head {
            w_o: DMatrix::zeros(dim, head_size),
            w_v: DMatrix::zeros(head_size, dim),
            w_k: DMatrix::zeros(head_size, dim),
            w_q: DMatrix::zeros(head_size, dim),
        };
        TransformerBlock {
            dim,
            heads: vec![head; heads],
            w1: DMatrix::zeros(hidden, dim),
            b1: DVector::zeros(hidden),
            w2: DMatrix::zeros(dim, hidden),
        }
    }

    /// Weights uniform in `±1/√fan_in`.
    pub fn random(dim: usize, heads: usize, head_size: usize, hidden: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mat = |r: usize, c: usize, fan_in: usize| {
            let s = 1.0 / (fan_in.max(1) as f64).sqrt();
            DMatrix::from_fn(r, c, |_, _| rng.random_range(-s..=s))
        };
        let heads = (0..heads)
            .map(|_| Head {
                w_o: mat(dim, head_size, head_size),
                w_v: mat(head_size, dim, dim),
                w_k: mat(head_size, dim, dim),
                w_q: mat(head_size, dim, dim),
            })
            .collect();
        let w1 = mat(hidden, dim, dim);
        let b1 = mat(hidden, 1, dim).column(0).into_owned();
        let w2 = mat(dim, hidden, hidden);
        TransformerBlock { dim, heads, w1, b1, w2 }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        for h in &self.heads {
            let m = h.w_o.ncols();
            let ok = h.w_o.nrows() == d
                && h.w_v.shape() == (m, d)
                && h.w_k.shape() == (m, d)
                && h.w_q.shape() == (m, d);
            if !ok {
                return Err(Error::invalid("transformer block", "head weight shapes disagree"));
            }
        }
        let r = self.w1.nrows();
        if self.w1.ncols() != d || self.b1.len() != r || self.w2.shape() != (d, r) {
            return Err(Error::invalid("transformer block", "feed-forward weight shapes disagree"));
        }
        Ok(())
    }

    pub fn attention(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if x.nrows() != self.dim {
            return Err(Error::Arity { expected: self.dim, got: x.nrows() });
        }
        let mut out = x.clone();
        for h in &self.heads {
            let scores = (&h.w_k * x).transpose() * (&h.w_q * x);
            out += &h.w_o * (&h.w_v * x) * softmax_columns(&scores);
        }
        Ok(out)
    }

    pub fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let a = self.attention(x)?;
        let mut hidden = &self.w1 * &a;
        for mut col in hidden.column_iter_mut() {
            col += &self.b1;
            col.apply(|v| *v = v.max(0.0));
        }
        Ok(&a + &self.w2 * hidden)
    }

    /// `max |FF(XP) − FF(X)P|` for the permutation with `(XP)_j = X_{perm[j]}`.
    pub fn equivariance_error(&self, x: &DMatrix<f64>, perm: &[usize]) -> Result<f64> {
        let lhs = self.apply(&permute_columns(x, perm)?)?;
        let rhs = permute_columns(&self.apply(x)?, perm)?;
        Ok((lhs - rhs).amax())
    }
}

/// Applies the blocks left to right.
pub fn apply_stack(blocks: &[TransformerBlock], x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    blocks.iter().try_fold(x.clone(), |acc, b| b.apply(&acc))
}

/// `max |F(XP) − F(X)P|` for the composite `F` of the blocks.
pub fn stack_equivariance_error(blocks: &[TransformerBlock], x: &DMatrix<f64>, perm: &[usize]) -> Result<f64> {
    let lhs = apply_stack(blocks, &permute_columns(x, perm)?)?;
    let rhs = permute_columns(&apply_stack(blocks, x)?, perm)?;
    Ok((lhs - rhs).amax())
}

/// `d×n` tokens uniform in `[-1, 1]`.
pub fn random_tokens(dim: usize, n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(dim, n, |_, _| rng.random_range(-1.0..=1.0))
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return out };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot has a successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn softmax_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for mut col in out.column_iter_mut() {
        let top = col.max();
        col.apply(|v| *v = (*v - top).exp());
        let total = col.sum();
        col /= total;
    }
    out
}

/// `X P`, i.e. column `j` of the result is column `perm[j]` of `X`.
pub fn permute_columns(x: &DMatrix<f64>, perm: &[usize]) -> Result<DMatrix<f64>> {
    let n = x.ncols();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::invalid("permutation", format!("{perm:?} is not a permutation of 0..{n}")));
    }
    Ok(DMatrix::from_fn(x.nrows(), n, |i, j| x[(i, perm[j])]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(d: usize, n: usize, seed: u64) -> DMatrix<f64> {
        random_tokens(d, n, seed)
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn zero_weights_give_identity() {
        let t = TransformerBlock::zero(2, 1, 2, 4);
        let x = sample(2, 3, 1);
        assert_eq!(t.apply(&x).unwrap(), x);
    }

    #[test]
    fn small_block_is_equivariant() {
        let t = TransformerBlock::random(2, 1, 2, 4, 42);
        t.validate().unwrap();
        let x = sample(2, 3, 9);
        for perm in [[0, 1, 2], [1, 0, 2], [2, 0, 1], [2, 1, 0]] {
            assert!(t.equivariance_error(&x, &perm).unwrap() <= 1e-6);
        }
        let stack = [t.clone(), TransformerBlock::random(2, 2, 3, 5, 7)];
        let lhs = apply_stack(&stack, &permute_columns(&x, &[1, 2, 0]).unwrap()).unwrap();
        let rhs = permute_columns(&apply_stack(&stack, &x).unwrap(), &[1, 2, 0]).unwrap();
        assert!((lhs - rhs).amax() <= 1e-9);
    }

    #[test]
    fn softmax_columns_sum_to_one() {
        let s = softmax_columns(&sample(4, 3, 2));
        for c in s.column_iter() {
            assert!((c.sum() - 1.0).abs() < 1e-12);
        }
        assert!(permute_columns(&sample(2, 3, 0), &[0, 0, 1]).is_err());
    }
}
