//! Exact LYM-type sums.
//!
//! Each evaluator returns the sum, its bound and the per-member terms. The
//! evaluators do not check the hypotheses of the inequalities they belong
//! to (intersecting, antichain, butterfly-free); they only reject members
//! whose term is undefined or outside the stated size range.

use serde::Serialize;
use thiserror::Error;

use crate::binom::binomial;
use crate::ground::{SetFamily, Subset};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IneqError {
    #[error("member {set} has size {size}, outside {lo}..={hi}")]
    SizeGuard {
        set: String,
        size: u32,
        lo: u32,
        hi: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LymReport {
    #[serde(serialize_with = "ser_ratio")]
    pub value: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Rational,
    pub satisfied: bool,
    #[serde(serialize_with = "ser_terms")]
    pub terms: Vec<(Subset, Rational)>,
}

/// `"p/q"` (or `"p"` for integers).
pub fn ratio_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

fn ser_terms<S: serde::Serializer>(terms: &[(Subset, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (set, r) in terms {
        seq.serialize_element(&(set.elements(), ratio_string(r)))?;
    }
    seq.end()
}

fn guard(f: &SetFamily, lo: u32, hi: u32) -> Result<(), IneqError> {
    match f.iter().find(|s| s.size() < lo || s.size() > hi) {
        Some(s) => Err(IneqError::SizeGuard {
            set: s.to_string(),
            size: s.size(),
            lo,
            hi,
        }),
        None => Ok(()),
    }
}

fn report(f: &SetFamily, bound: i128, term: impl Fn(u32) -> u128) -> LymReport {
    let terms: Vec<(Subset, Rational)> = f
        .iter()
        .map(|s| (s, Rational::new(1, term(s.size()) as i128)))
        .collect();
    let value = terms
        .iter()
        .fold(Rational::from_integer(0), |acc, t| acc + t.1);
    let bound = Rational::from_integer(bound);
    LymReport {
        value,
        bound,
        satisfied: value <= bound,
        terms,
    }
}

fn gkk_term(n: u8) -> impl Fn(u32) -> u128 {
    let n = n as i64;
    move |r| {
        let r = r as i64;
        if 2 * r <= n {
            binomial(n, r - 1)
        } else {
            binomial(n, r)
        }
    }
}

fn bollobas_term(n: u8) -> impl Fn(u32) -> u128 {
    move |r| binomial(n as i64 - 1, r as i64 - 1)
}

/// `Σ_{|F| <= n/2} 1/C(n, |F|-1) + Σ_{|F| > n/2} 1/C(n, |F|)` against 1.
pub fn gkk_sum(f: &SetFamily) -> Result<LymReport, IneqError> {
    guard(f, 1, f.n() as u32)?;
    Ok(report(f, 1, gkk_term(f.n())))
}

/// `Σ 1/C(n-1, |F|-1)` against 1, for members of size `1..=n/2`.
pub fn bollobas_sum(f: &SetFamily) -> Result<LymReport, IneqError> {
    guard(f, 1, f.n() as u32 / 2)?;
    Ok(report(f, 1, bollobas_term(f.n())))
}

/// The terms of [`gkk_sum`] against 2, for members of size `2..=n-2`.
pub fn gkk2_sum(f: &SetFamily) -> Result<LymReport, IneqError> {
    guard(f, 2, (f.n() as u32).saturating_sub(2))?;
    Ok(report(f, 2, gkk_term(f.n())))
}

/// The terms of [`bollobas_sum`] against 2, for members of size `2..=n/2`.
pub fn bollobas2_sum(f: &SetFamily) -> Result<LymReport, IneqError> {
    guard(f, 2, f.n() as u32 / 2)?;
    Ok(report(f, 2, bollobas_term(f.n())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_h0, construct_hx};

    fn star(n: u8, r: u32, x: u32) -> SetFamily {
        SetFamily::level(n, r).unwrap().filter(|s| s.contains(x))
    }

    #[test]
    fn gkk_examples() {
        let r = gkk_sum(&SetFamily::level(5, 3).unwrap()).unwrap();
        assert_eq!(r.value, Rational::from_integer(1));
        assert!(r.satisfied);
        assert_eq!(gkk_sum(&star(5, 3, 1)).unwrap().value, Rational::new(3, 5));
        let one = SetFamily::from_element_lists(5, [vec![1, 2]]).unwrap();
        assert_eq!(gkk_sum(&one).unwrap().value, Rational::new(1, 5));
        assert!(gkk_sum(&SetFamily::from_masks(5, [0]).unwrap()).is_err());
    }

    #[test]
    fn bollobas_examples() {
        let r = bollobas_sum(&star(6, 3, 1)).unwrap();
        assert_eq!(r.value, Rational::from_integer(1));
        assert!(r.satisfied);
        let two = SetFamily::from_element_lists(6, [vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(bollobas_sum(&two).unwrap().value, Rational::new(2, 5));
        let big = SetFamily::from_element_lists(6, [vec![1, 2, 3, 4]]).unwrap();
        assert!(bollobas_sum(&big).is_err());
    }

    #[test]
    fn gkk2_examples() {
        let h = construct_hx(6, 2, 1).unwrap().filter(|s| s.size() != 5);
        assert_eq!(gkk2_sum(&h).unwrap().value, Rational::new(5, 3));
        let r = gkk2_sum(&construct_h0(5, 2).unwrap());
        assert!(r.is_err(), "4-sets of [5] exceed n - 2");
        let single = SetFamily::from_element_lists(6, [vec![1, 2, 3]]).unwrap();
        assert_eq!(gkk2_sum(&single).unwrap().value, Rational::new(1, 15));
    }

    #[test]
    fn gkk_terms_of_two_levels() {
        let r = gkk_sum(&construct_h0(5, 2).unwrap()).unwrap();
        assert_eq!(r.value, Rational::from_integer(2));
        assert_eq!(r.terms.len(), 15);
    }

    #[test]
    fn bollobas2_examples() {
        assert_eq!(
            bollobas2_sum(&star(6, 3, 1)).unwrap().value,
            Rational::from_integer(1)
        );
        assert_eq!(
            bollobas2_sum(&star(8, 3, 1)).unwrap().value,
            Rational::from_integer(1)
        );
        let r = bollobas2_sum(&SetFamily::empty(6).unwrap()).unwrap();
        assert_eq!(r.value, Rational::from_integer(0));
        assert!(r.satisfied);
    }

    #[test]
    fn json_renders_ratios() {
        let r = gkk_sum(&star(5, 3, 1)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["value"], "3/5");
        assert_eq!(v["bound"], "1");
    }
}
