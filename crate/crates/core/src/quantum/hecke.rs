use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QuantumError, MAX_COLOR_BOXES};
use crate::ring::{LaurentPoly, RationalFunction};

/// A permutation of `0..r` in one-line notation.
pub type Perm = Vec<u8>;

fn identity(r: usize) -> Perm {
    (0..r as u8).collect()
}

fn length(p: &Perm) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

/// `s_i o p`.
fn left_gen(i: usize, p: &Perm) -> Perm {
    p.iter().map(|&x| if x as usize == i { x + 1 } else if x as usize == i + 1 { x - 1 } else { x }).collect()
}

/// Lexicographically smallest reduced word of every permutation of `0..r`.
fn normal_words(r: usize) -> HashMap<Perm, Vec<u8>> {
    let mut words = HashMap::new();
    words.insert(identity(r), Vec::new());
    let mut queue = VecDeque::from([identity(r)]);
    while let Some(p) = queue.pop_front() {
        let w = words[&p].clone();
        for i in 0..r.saturating_sub(1) {
            // p o s_i
            let mut np = p.clone();
            np.swap(i, i + 1);
            if !words.contains_key(&np) {
                let mut nw = w.clone();
                nw.push(i as u8);
                words.insert(np.clone(), nw);
                queue.push_back(np);
            }
        }
    }
    words
}

/// Element of the Hecke algebra `H_r` with `(T_i - q)(T_i + q^-1) = 0`, in
/// the basis `T_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    r: usize,
    terms: BTreeMap<Perm, RationalFunction>,
}

impl HeckeElement {
    pub fn zero(r: usize) -> Self {
        HeckeElement { r, terms: BTreeMap::new() }
    }

    pub fn one(r: usize) -> Self {
        Self::basis(identity(r))
    }

    pub fn basis(p: Perm) -> Self {
        let r = p.len();
        HeckeElement { r, terms: BTreeMap::from([(p, RationalFunction::one())]) }
    }

    /// The generator `T_i` (0-based).
    pub fn generator(r: usize, i: usize) -> Self {
        let mut p = identity(r);
        p.swap(i, i + 1);
        Self::basis(p)
    }

    pub fn strands(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(reduced word, coefficient)`; the word `[i1, .., ik]` is
    /// `T_i1 ... T_ik` with 0-based generator indices.
    pub fn terms(&self) -> Vec<(Vec<u8>, RationalFunction)> {
        let words = normal_words(self.r);
        self.terms.iter().map(|(p, c)| (words[p].clone(), c.clone())).collect()
    }

    fn add_term(&mut self, p: Perm, c: &RationalFunction) {
        let v = &self.terms.remove(&p).unwrap_or_else(RationalFunction::zero) + c;
        if !v.is_zero() {
            self.terms.insert(p, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-RationalFunction::one()))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(self.r);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &(v * c));
        }
        out
    }

    /// `T_i * self`.
    fn left_mul_gen(&self, i: usize) -> Self {
        let z = RationalFunction::from(LaurentPoly::from_q_terms([(1, 1), (-1, -1)]));
        let mut out = Self::zero(self.r);
        for (p, c) in &self.terms {
            let sp = left_gen(i, p);
            if length(&sp) > length(p) {
                out.add_term(sp, c);
            } else {
                out.add_term(sp, c);
                out.add_term(p.clone(), &(c * &z));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r);
        let words = normal_words(self.r);
        let mut out = Self::zero(self.r);
        for (p, c) in &self.terms {
            let mut acc = other.clone();
            for &i in words[p].iter().rev() {
                acc = acc.left_mul_gen(i as usize);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Multiplicative Jucys-Murphy element `X_k = T_{k-1} X_{k-1} T_{k-1}`,
    /// `X_1 = 1` (1-based `k`). It acts on the tableau vector of `T` by
    /// `q^(2 c)` where `c` is the content of the box holding `k`.
    pub fn jucys_murphy(r: usize, k: usize) -> Self {
        let mut x = Self::one(r);
        for j in 1..k {
            let t = Self::generator(r, j - 1);
            x = t.mul(&x).mul(&t);
        }
        x
    }

    /// Matrix of left multiplication in the basis of all permutations.
    fn regular_matrix(&self) -> (Vec<Perm>, Vec<Vec<RationalFunction>>) {
        let perms: Vec<Perm> = {
            let mut v: Vec<Perm> = normal_words(self.r).into_keys().collect();
            v.sort();
            v
        };
        let n = perms.len();
        let mut m = vec![vec![RationalFunction::zero(); n]; n];
        for (j, p) in perms.iter().enumerate() {
            let img = self.mul(&Self::basis(p.clone()));
            for (i, p2) in perms.iter().enumerate() {
                if let Some(c) = img.terms.get(p2) {
                    m[i][j] = c.clone();
                }
            }
        }
        (perms, m)
    }
}

/// Rank over `Q` of a matrix of Laurent polynomials specialized at `s = 2`
/// (a generic point; `q = 4` is not a root of unity).
fn rank_at_generic_point(m: &[Vec<LaurentPoly>]) -> usize {
    let shift = m.iter().flatten().filter(|p| !p.is_zero()).map(|p| p.min_exp()).min().unwrap_or(0);
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|p| p.shift(-shift).eval_i64(2)).collect()).collect();
    // fraction-free elimination
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&a[rank][c] * &a[r][cc] - &a[r][c] * &a[rank][cc]) / &prev;
                a[r][cc] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Contents `c` in `-(k-1)..=(k-1)` for which `q^(2c)` is an eigenvalue of
/// the element in the regular representation.
fn spectrum(x: &HeckeElement, k: usize) -> Vec<i64> {
    let (_, m) = x.regular_matrix();
    let n = m.len();
    let mut out = Vec::new();
    for c in -(k as i64 - 1)..=(k as i64 - 1) {
        let lam = LaurentPoly::q_monomial(1, 2 * c);
        let shifted: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = m[i][j].as_laurent().cloned().expect("Jucys-Murphy elements have polynomial coefficients");
                        if i == j {
                            v - lam.clone()
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        if rank_at_generic_point(&shifted) < n {
            out.push(c);
        }
    }
    out
}

/// Standard Young tableaux of a partition of at most three boxes, rows of
/// entries `1..=r`, in the order obtained by placing each entry in the
/// highest possible row first.
pub fn standard_tableaux(partition: &[usize]) -> Result<Vec<Vec<Vec<usize>>>, QuantumError> {
    let r: usize = partition.iter().sum();
    if partition.is_empty() || partition.contains(&0) || partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(QuantumError::InvalidSpec(format!("{partition:?} is not a partition")));
    }
    if r > MAX_COLOR_BOXES {
        return Err(QuantumError::InvalidSpec(format!("partitions of more than {MAX_COLOR_BOXES} boxes are not supported")));
    }
    fn rec(partition: &[usize], cur: &mut Vec<Vec<usize>>, k: usize, r: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if k > r {
            out.push(cur.clone());
            return;
        }
        for row in 0..partition.len() {
            let len = cur[row].len();
            let fits = len < partition[row] && (row == 0 || cur[row - 1].len() > len);
            if fits {
                cur[row].push(k);
                rec(partition, cur, k + 1, r, out);
                cur[row].pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(partition, &mut vec![Vec::new(); partition.len()], 1, r, &mut out);
    Ok(out)
}

fn content_of(tableau: &[Vec<usize>], k: usize) -> i64 {
    for (i, row) in tableau.iter().enumerate() {
        if let Some(j) = row.iter().position(|&x| x == k) {
            return j as i64 - i as i64;
        }
    }
    unreachable!("entry {k} missing from tableau")
}

/// Primitive idempotent of `H_r` for a standard tableau: the product over
/// `k` of the Lagrange projectors of `X_k` onto its eigenvalue
/// `q^(2 content(k))`, with the spectrum of `X_k` found in the regular
/// representation.
pub fn young_idempotent(tableau: &[Vec<usize>]) -> Result<HeckeElement, QuantumError> {
    let partition: Vec<usize> = tableau.iter().map(|r| r.len()).collect();
    if !standard_tableaux(&partition)?.iter().any(|t| t == tableau) {
        return Err(QuantumError::InvalidSpec(format!("{tableau:?} is not a standard tableau")));
    }
    let r: usize = partition.iter().sum();
    let mut e = HeckeElement::one(r);
    for k in 2..=r {
        let x = HeckeElement::jucys_murphy(r, k);
        let target = content_of(tableau, k);
        let spec = spectrum(&x, k);
        if !spec.contains(&target) {
            return Err(QuantumError::InvalidSpec(format!("content {target} is not in the spectrum {spec:?} of X_{k}")));
        }
        let mu = LaurentPoly::q_monomial(1, 2 * target);
        for c in spec.into_iter().filter(|&c| c != target) {
            let lam = LaurentPoly::q_monomial(1, 2 * c);
            let factor = x.sub(&HeckeElement::one(r).scale(&lam.clone().into()));
            let den = RationalFunction::from(mu.clone() - lam);
            e = e.mul(&factor).scale(&den.inv()?);
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation_and_braid() {
        let t0 = HeckeElement::generator(3, 0);
        let t1 = HeckeElement::generator(3, 1);
        let z = RationalFunction::from(LaurentPoly::from_q_terms([(1, 1), (-1, -1)]));
        assert_eq!(t0.mul(&t0), t0.scale(&z).add(&HeckeElement::one(3)));
        assert_eq!(t0.mul(&t1).mul(&t0), t1.mul(&t0).mul(&t1));
        let words: Vec<Vec<u8>> = t0.mul(&t1).terms().into_iter().map(|(w, _)| w).collect();
        assert_eq!(words, vec![vec![0, 1]]);
    }

    #[test]
    fn tableaux() {
        assert_eq!(standard_tableaux(&[2, 1]).unwrap(), vec![vec![vec![1, 2], vec![3]], vec![vec![1, 3], vec![2]]]);
        assert_eq!(standard_tableaux(&[1, 1, 1]).unwrap().len(), 1);
        assert!(standard_tableaux(&[1, 2]).is_err());
        assert!(standard_tableaux(&[4]).is_err());
    }

    #[test]
    fn idempotents_of_h3() {
        let mut all = Vec::new();
        for part in [vec![3], vec![2, 1], vec![1, 1, 1]] {
            for t in standard_tableaux(&part).unwrap() {
                all.push(young_idempotent(&t).unwrap());
            }
        }
        assert_eq!(all.len(), 4);
        let mut sum = HeckeElement::zero(3);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(&a.mul(a), a, "idempotent {i}");
            for (j, b) in all.iter().enumerate() {
                if i != j {
                    assert!(a.mul(b).is_zero(), "orthogonal {i} {j}");
                }
            }
            sum = sum.add(a);
        }
        assert_eq!(sum, HeckeElement::one(3));
    }

    #[test]
    fn jucys_murphy_spectrum() {
        assert_eq!(spectrum(&HeckeElement::jucys_murphy(2, 2), 2), vec![-1, 1]);
        assert_eq!(spectrum(&HeckeElement::jucys_murphy(3, 3), 3), vec![-2, -1, 1, 2]);
    }
}
