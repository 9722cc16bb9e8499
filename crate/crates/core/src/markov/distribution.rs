use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalar::{l1_distance, sum, Scalar};

/// A finite probability distribution with labelled support.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<L, S> {
    support: Vec<L>,
    mass: Vec<S>,
}

impl<L: Clone + PartialEq + Debug, S: Scalar> Distribution<L, S> {
    /// Checks that masses are nonnegative and sum to one (exactly for exact
    /// scalars, up to [`Scalar::negligible`] otherwise).
    pub fn new(support: Vec<L>, mass: Vec<S>) -> Result<Self> {
        if support.len() != mass.len() {
            return Err(Error::InvalidDistribution("support and mass differ in length".into()));
        }
        if let Some(m) = mass.iter().find(|m| m.is_negative() && !m.negligible()) {
            return Err(Error::InvalidDistribution(format!("negative mass {m:?}")));
        }
        let total = sum(&mass);
        if !(total.clone() - S::one()).negligible() {
            return Err(Error::InvalidDistribution(format!("total mass {total:?}")));
        }
        Ok(Distribution { support, mass })
    }

    pub fn support(&self) -> &[L] {
        &self.support
    }

    pub fn mass(&self) -> &[S] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, label: &L) -> Option<&S> {
        self.support.iter().position(|l| l == label).map(|i| &self.mass[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &S)> {
        self.support.iter().zip(&self.mass)
    }

    /// Probability that two independent draws agree.
    pub fn collision_probability(&self) -> S {
        self.mass.iter().fold(S::zero(), |acc, m| acc + m.clone() * m.clone())
    }

    /// L1 distance to `other`, matching labels; labels missing on one side
    /// count with mass zero.
    pub fn l1_distance(&self, other: &Self) -> S {
        let mut labels = self.support.clone();
        for l in &other.support {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
        let pick = |d: &Self| -> Vec<S> { labels.iter().map(|l| d.get(l).cloned().unwrap_or_else(S::zero)).collect() };
        l1_distance(&pick(self), &pick(other))
    }

    /// Lossy conversion to `f64` masses.
    pub fn to_f64(&self) -> Distribution<L, f64> {
        Distribution { support: self.support.clone(), mass: self.mass.iter().map(Scalar::to_f64_lossy).collect() }
    }

    /// Sum masses by `key`, keeping keys in order of first appearance.
    pub fn marginal<K: Clone + PartialEq + Debug>(&self, key: impl Fn(&L) -> K) -> Distribution<K, S> {
        let mut support: Vec<K> = Vec::new();
        let mut mass: Vec<S> = Vec::new();
        for (l, m) in self.iter() {
            let k = key(l);
            match support.iter().position(|s| *s == k) {
                Some(i) => mass[i] = mass[i].clone() + m.clone(),
                None => {
                    support.push(k);
                    mass.push(m.clone());
                }
            }
        }
        Distribution { support, mass }
    }
}
