//! Length generating polynomials: unimodality and factorization into
//! `q`-integers `[e+1]_t = 1 + t + ⋯ + t^e`.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincarePolynomial {
    pub coefficients: Vec<u64>,
    pub unimodal: bool,
    /// Exponents `e` (ascending) with `P = ∏ (1 + ⋯ + t^e)`, if such a
    /// factorization exists.
    pub factorization: Option<Vec<usize>>,
}

impl PoincarePolynomial {
    pub fn new(coefficients: Vec<u64>) -> Self {
        let unimodal = is_unimodal(&coefficients);
        let as_int: Vec<i128> = coefficients.iter().map(|&c| c as i128).collect();
        let factorization = q_integer_factorization(&as_int);
        PoincarePolynomial { coefficients, unimodal, factorization }
    }

    /// Renders the factorization as `(1+t)(1+t+t^2)…`.
    pub fn factorization_string(&self) -> Option<String> {
        let exps = self.factorization.as_ref()?;
        if exps.is_empty() {
            return Some("1".into());
        }
        Some(
            exps.iter()
                .map(|&e| {
                    let terms: Vec<String> = (0..=e)
                        .map(|k| match k {
                            0 => "1".to_string(),
                            1 => "t".to_string(),
                            _ => format!("t^{k}"),
                        })
                        .collect();
                    format!("({})", terms.join("+"))
                })
                .collect(),
        )
    }
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(c: &[u64]) -> bool {
    let mut k = 0;
    while k + 1 < c.len() && c[k] <= c[k + 1] {
        k += 1;
    }
    while k + 1 < c.len() && c[k] >= c[k + 1] {
        k += 1;
    }
    k + 1 >= c.len()
}

/// Exact division by `1 + t + ⋯ + t^e`; `None` if there is a remainder.
pub fn divide_by_q_integer(p: &[i128], e: usize) -> Option<Vec<i128>> {
    if e == 0 || p.len() <= e {
        return None;
    }
    // (1 + ⋯ + t^e) = (1 − t^{e+1}) / (1 − t), so multiply by (1 − t) and
    // divide by (1 − t^{e+1}) term by term.
    let mut times: Vec<i128> = vec![0; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        times[k] += c;
        times[k + 1] -= c;
    }
    let qlen = p.len() - e;
    let mut q = vec![0i128; qlen];
    let mut rem = times;
    for k in 0..qlen {
        q[k] = rem[k];
        rem[k] = 0;
        rem[k + e + 1] += q[k];
    }
    rem.iter().all(|&x| x == 0).then_some(q)
}

/// Factorization into `q`-integers, searching exponents in descending
/// order with backtracking, so `None` certifies that no factorization
/// exists.
pub fn q_integer_factorization(p: &[i128]) -> Option<Vec<usize>> {
    fn search(p: &[i128], max_e: usize, acc: &mut Vec<usize>) -> bool {
        if p == [1] {
            return true;
        }
        let deg = p.len() - 1;
        for e in (1..=deg.min(max_e)).rev() {
            if let Some(q) = divide_by_q_integer(p, e) {
                acc.push(e);
                if search(&q, e, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut p = p.to_vec();
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() || p.iter().all(|&c| c == 0) {
        return None;
    }
    let mut acc = Vec::new();
    if search(&p, usize::MAX, &mut acc) {
        acc.sort_unstable();
        Some(acc)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(exps: &[usize]) -> Vec<i128> {
        let mut p = vec![1i128];
        for &e in exps {
            let mut next = vec![0i128; p.len() + e];
            for (k, &c) in p.iter().enumerate() {
                for s in 0..=e {
                    next[k + s] += c;
                }
            }
            p = next;
        }
        p
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 3, 5, 7, 8, 7, 5, 3, 1]));
        assert!(!is_unimodal(&[1, 3, 6, 7, 6, 7, 6, 3, 1]));
        assert!(is_unimodal(&[1]));
        assert!(is_unimodal(&[2, 2, 1]));
    }

    #[test]
    fn factors_products_of_q_integers() {
        assert_eq!(product(&[1, 3, 4]), vec![1, 3, 5, 7, 8, 7, 5, 3, 1]);
        for exps in [vec![1], vec![1, 3, 4], vec![1, 2], vec![3, 5], vec![1, 1, 2, 5]] {
            assert_eq!(q_integer_factorization(&product(&exps)), Some(exps));
        }
        assert_eq!(q_integer_factorization(&[1]), Some(vec![]));
    }

    #[test]
    fn non_unimodal_sequence_has_no_factorization() {
        assert_eq!(q_integer_factorization(&[1, 3, 6, 7, 6, 7, 6, 3, 1]), None);
        assert_eq!(q_integer_factorization(&[1, 2]), None);
    }

    #[test]
    fn rendering() {
        let p = PoincarePolynomial::new(vec![1, 1]);
        assert_eq!(p.factorization_string().unwrap(), "(1+t)");
    }
}
