//! Triangular operator data and the three ways of turning it into a
//! monomial expansion: the recurrence, the sum over chains, and the
//! normalized cofactor expansion of the lower Hessenberg determinant.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_arith::{Scalar, Var};
use crate::exec::{par_map, Execution};
use crate::root_data::Weight;

/// Eigenvalues and lower-triangular matrix elements on a dominant interval.
///
/// `interval` is a linear extension of the order with `lambda` last.
/// `d[(j, k)]` is the coefficient of `m_{interval[k]}` in `(D - eps_lambda) m_{interval[j]}`
/// for `k < j`; absent keys are zero.
#[derive(Clone, Debug)]
pub struct TriangularData {
    pub interval: Vec<Weight>,
    pub eps: Vec<Scalar>,
    pub d: BTreeMap<(usize, usize), Scalar>,
    pub a: Option<BTreeMap<(usize, usize), Scalar>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Cancel full polynomial gcds in every intermediate coefficient.
    pub full_gcd: bool,
    pub exec: Execution,
}

/// `p_lambda = sum_mu c_mu m_mu`, terms in interval order, zero terms dropped.
#[derive(Clone, Debug)]
pub struct MonomialExpansion {
    pub lambda: Weight,
    pub terms: Vec<(Weight, Scalar)>,
}

impl MonomialExpansion {
    pub fn coeff(&self, w: &Weight) -> Scalar {
        self.terms.iter().find(|(m, _)| m == w).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn reduced(&self) -> MonomialExpansion {
        MonomialExpansion {
            lambda: self.lambda.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.reduced())).collect(),
        }
    }

    /// Coefficientwise value equality; missing terms count as zero.
    pub fn equals(&self, other: &MonomialExpansion) -> bool {
        let mut keys: Vec<&Weight> = self.terms.iter().map(|t| &t.0).collect();
        keys.extend(other.terms.iter().map(|t| &t.0));
        keys.iter().all(|w| self.coeff(w) == other.coeff(w))
    }

    pub fn substitute(&self, b: &[(Var, Scalar)]) -> Result<MonomialExpansion> {
        let mut terms = Vec::new();
        for (w, c) in &self.terms {
            let s = c.substitute(b)?;
            if !s.is_zero() {
                terms.push((w.clone(), s));
            }
        }
        Ok(MonomialExpansion { lambda: self.lambda.clone(), terms })
    }
}

impl TriangularData {
    pub fn new(interval: Vec<Weight>, eps: Vec<Scalar>, d: BTreeMap<(usize, usize), Scalar>) -> Result<TriangularData> {
        if interval.is_empty() || interval.len() != eps.len() {
            return Err(Error::InvalidSpec("interval and eigenvalues must have equal nonzero length".into()));
        }
        if d.keys().any(|&(j, k)| k >= j || j >= interval.len()) {
            return Err(Error::InvalidSpec("matrix elements must be strictly lower triangular".into()));
        }
        Ok(TriangularData { interval, eps, d, a: None })
    }

    pub fn n(&self) -> usize {
        self.interval.len()
    }

    pub fn lambda(&self) -> &Weight {
        self.interval.last().unwrap()
    }

    pub fn eps_lambda(&self) -> &Scalar {
        self.eps.last().unwrap()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.interval.iter().position(|x| x == w)
    }

    pub fn entry(&self, j: usize, k: usize) -> Scalar {
        self.d.get(&(j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `eps_lambda - eps_mu` for every `mu` below `lambda`, in interval order.
    pub fn normalization_factors(&self) -> Vec<Scalar> {
        let el = self.eps_lambda();
        self.eps[..self.n() - 1].iter().map(|e| el - e).collect()
    }

    pub fn normalization(&self) -> Scalar {
        self.normalization_factors().iter().fold(Scalar::one(), |a, b| &a * b)
    }

    pub fn check_regular(&self) -> Result<()> {
        for (w, f) in self.interval.iter().zip(self.normalization_factors()) {
            if f.is_zero() {
                return Err(Error::RegularityViolation { mu: w.render(), lambda: self.lambda().render() });
            }
        }
        Ok(())
    }

    pub fn substitute(&self, b: &[(Var, Scalar)]) -> Result<TriangularData> {
        let eps = self.eps.iter().map(|e| e.substitute(b)).collect::<Result<Vec<_>>>()?;
        let mut d = BTreeMap::new();
        for (k, v) in &self.d {
            let s = v.substitute(b)?;
            if !s.is_zero() {
                d.insert(*k, s);
            }
        }
        let a = match &self.a {
            Some(a) => {
                let mut m = BTreeMap::new();
                for (k, v) in a {
                    m.insert(*k, v.substitute(b)?);
                }
                Some(m)
            }
            None => None,
        };
        Ok(TriangularData { interval: self.interval.clone(), eps, d, a })
    }

    /// Restrict to the weights satisfying `keep` (which must include `lambda`).
    pub fn restrict(&self, keep: impl Fn(&Weight) -> bool) -> TriangularData {
        let idx: Vec<usize> = (0..self.n()).filter(|&i| keep(&self.interval[i]) || i == self.n() - 1).collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let remap = |m: &BTreeMap<(usize, usize), Scalar>| -> BTreeMap<(usize, usize), Scalar> {
            m.iter()
                .filter_map(|(&(j, k), v)| Some(((*pos.get(&j)?, *pos.get(&k)?), v.clone())))
                .collect()
        };
        TriangularData {
            interval: idx.iter().map(|&i| self.interval[i].clone()).collect(),
            eps: idx.iter().map(|&i| self.eps[i].clone()).collect(),
            d: remap(&self.d),
            a: self.a.as_ref().map(remap),
        }
    }

    /// Columns `1..n` of the Hessenberg matrix; column `0` holds the monomials.
    pub fn matrix_columns(&self) -> Vec<Vec<Scalar>> {
        let n = self.n();
        let el = self.eps_lambda();
        (0..n)
            .map(|j| {
                (1..n)
                    .map(|k| {
                        if k == j + 1 {
                            &self.eps[j] - el
                        } else if k <= j {
                            self.entry(j, k - 1)
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Solve `c_{l-1} = (eps_lambda - eps_{l-1})^{-1} sum_{k >= l} c_k d_{k, l-1}` downward from `c_lambda = 1`.
pub fn solve_recurrence(td: &TriangularData, opts: SolveOptions) -> Result<MonomialExpansion> {
    td.check_regular()?;
    let n = td.n();
    let el = td.eps_lambda().clone();
    let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
    for (&(j, k), v) in &td.d {
        columns[k].push((j, v.clone()));
    }
    let mut c: Vec<Scalar> = vec![Scalar::zero(); n];
    c[n - 1] = Scalar::one();
    for l in (0..n - 1).rev() {
        let col: Vec<&(usize, Scalar)> = columns[l].iter().filter(|(k, _)| !c[*k].is_zero()).collect();
        let parts = par_map(opts.exec, &col, |(k, v)| &c[*k] * v);
        let sum: Scalar = parts.into_iter().sum();
        if sum.is_zero() {
            continue;
        }
        let v = sum.div(&(&el - &td.eps[l]))?;
        c[l] = v.reduce(opts.full_gcd);
    }
    Ok(finish(td, c))
}

fn finish(td: &TriangularData, c: Vec<Scalar>) -> MonomialExpansion {
    let terms = td
        .interval
        .iter()
        .cloned()
        .zip(c)
        .filter(|(_, s)| !s.is_zero())
        .map(|(w, s)| (w, s.reduced()))
        .collect();
    MonomialExpansion { lambda: td.lambda().clone(), terms }
}

/// Sum over chains `j = m_0 < m_1 < ... < m_s = n-1` of
/// `prod_i d_{m_{i+1}, m_i} / (eps_lambda - eps_{m_i})`, one product per chain.
pub fn solve_closed_form(td: &TriangularData) -> Result<MonomialExpansion> {
    td.check_regular()?;
    let n = td.n();
    let factors = td.normalization_factors();
    let mut c = vec![Scalar::zero(); n];
    c[n - 1] = Scalar::one();
    for j in 0..n - 1 {
        let mut acc = Scalar::zero();
        let mut stack: Vec<(usize, Scalar, Scalar)> = vec![(j, Scalar::one(), Scalar::one())];
        while let Some((at, num, den)) = stack.pop() {
            if at == n - 1 {
                acc = &acc + &num.div(&den)?;
                continue;
            }
            for k in at + 1..n {
                if let Some(v) = td.d.get(&(k, at)) {
                    stack.push((k, &num * v, &den * &factors[at]));
                }
            }
        }
        c[j] = acc;
    }
    Ok(finish(td, c))
}

/// Determinant by elimination over the scalar field.
pub fn determinant(mut m: Vec<Vec<Scalar>>) -> Result<Scalar> {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Ok(Scalar::zero()),
        };
        if piv != col {
            m.swap(piv, col);
            det = -&det;
        }
        let p = m[col][col].clone();
        det = (&det * &p).reduced();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].div(&p)?;
            for k in col..n {
                if m[col][k].is_zero() {
                    continue;
                }
                let v = &m[r][k] - &(&f * &m[col][k]);
                m[r][k] = v.reduced();
            }
        }
    }
    Ok(det)
}

/// First-column cofactor expansion of the Hessenberg determinant, divided by
/// the product of `eps_lambda - eps_mu`.
pub fn expand_determinant(td: &TriangularData) -> Result<MonomialExpansion> {
    td.check_regular()?;
    let n = td.n();
    let cols = td.matrix_columns();
    let norm = td.normalization();
    let mut c = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> = (0..n).filter(|&r| r != j).map(|r| cols[r].clone()).collect();
        let det = if minor.is_empty() { Scalar::one() } else { determinant(minor)? };
        let signed = if j % 2 == 0 { det } else { -&det };
        c.push(signed.div(&norm)?.reduced());
    }
    if !c[n - 1].is_one() {
        return Err(Error::InvalidSpec(format!("leading coefficient {} is not 1", c[n - 1])));
    }
    Ok(finish(td, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn a1_example() {
        let iv = vec![Weight::from_ints(&[1, 1]), Weight::from_ints(&[2, 0])];
        let mut d = BTreeMap::new();
        d.insert((1, 0), s("4*g"));
        let td = TriangularData::new(iv, vec![s("2"), s("2*(2+g)")], d).unwrap();
        let want = s("2*g/(1+g)");
        for r in [
            solve_recurrence(&td, SolveOptions::default()).unwrap(),
            solve_closed_form(&td).unwrap(),
            expand_determinant(&td).unwrap(),
        ] {
            assert_eq!(r.coeff(&Weight::from_ints(&[1, 1])), want);
            assert_eq!(r.coeff(&Weight::from_ints(&[2, 0])), Scalar::one());
        }
    }

    #[test]
    fn regularity_violation() {
        let iv = vec![Weight::from_ints(&[1, 1]), Weight::from_ints(&[2, 0])];
        let td = TriangularData::new(iv, vec![s("3"), s("3")], BTreeMap::new()).unwrap();
        assert!(matches!(
            solve_recurrence(&td, SolveOptions::default()),
            Err(Error::RegularityViolation { .. })
        ));
    }
}
