//! Finite-rank commutative algebras over `F_p` given by structure constants.

use std::fmt;

use super::linalg::{add_mod, axpy, dot, is_zero_vec, subspace_count, Submodule};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rings::{is_prime_u64, mul_mod};

/// Limits for exhaustive enumeration of subspaces and characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_rank: usize,
    pub max_prime: u64,
    pub execution: Execution,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_rank: 4,
            max_prime: 5,
            execution: Execution::default(),
        }
    }
}

/// An associative, commutative `F_p`-algebra with identity, of rank `d`, with
/// basis products `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u64,
    rank: usize,
    table: Vec<Vec<Vec<u64>>>,
    identity: Vec<u64>,
    names: Vec<String>,
    config: EnumConfig,
}

impl FiniteAlgebra {
    pub fn new(p: u64, table: Vec<Vec<Vec<u64>>>, identity: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) || p > u32::MAX as u64 {
            return Err(Error::Document(format!("base GF({p}) is not a supported prime field")));
        }
        let d = table.len();
        if d == 0 {
            return Err(Error::Document("rank must be at least 1".into()));
        }
        if identity.len() != d {
            return Err(Error::Document(format!(
                "identity has {} coordinates, rank is {d}",
                identity.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != d || row.iter().any(|v| v.len() != d) {
                return Err(Error::Document(format!(
                    "structure constants for b_{i} are not {d} x {d}"
                )));
            }
        }
        let table: Vec<Vec<Vec<u64>>> = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect())
            .collect();
        let identity: Vec<u64> = identity.into_iter().map(|x| x % p).collect();
        let alg = FiniteAlgebra {
            p,
            rank: d,
            table,
            identity,
            names: (0..d).map(|i| format!("b{i}")).collect(),
            config: EnumConfig::default(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.rank;
        for i in 0..d {
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::Document(format!("b{i} b{j} != b{j} b{i}")));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let jk = &self.table[j][k];
                    let right = self.mul(&self.basis_vector(i), jk);
                    if left != right {
                        return Err(Error::Document(format!(
                            "multiplication is not associative on (b{i} b{j}) b{k}"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            if self.mul(&self.identity, &self.basis_vector(i)) != self.basis_vector(i) {
                return Err(Error::Document(format!("identity does not fix b{i}")));
            }
        }
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank {
            return Err(Error::Document(format!(
                "{} basis names given for rank {}",
                names.len(),
                self.rank
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_config(mut self, config: EnumConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> EnumConfig {
        self.config
    }

    /// `F_p^m` with componentwise multiplication; identity `(1, ..., 1)`.
    pub fn product_of_fields(p: u64, m: usize) -> Result<Self> {
        let table = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut v = vec![0; m];
                        if i == j {
                            v[i] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra::new(p, table, vec![1; m])?
            .with_names((1..=m).map(|i| format!("e{i}")).collect())
    }

    /// `F_p[u]/(u^d)` with basis `1, u, ..., u^(d-1)`.
    pub fn truncated_polynomial(p: u64, d: usize) -> Result<Self> {
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0; d];
                        if i + j < d {
                            v[i + j] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut id = vec![0; d];
        id[0] = 1;
        let names = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            })
            .collect();
        FiniteAlgebra::new(p, table, id)?.with_names(names)
    }

    /// `F_p[eps]/(eps^2)`.
    pub fn dual_numbers(p: u64) -> Result<Self> {
        Self::truncated_polynomial(p, 2)?.with_names(vec!["1".into(), "eps".into()])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> &[u64] {
        &self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<u64>>] {
        &self.table
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        super::linalg::unit(self.rank, i)
    }

    pub fn zero_element(&self) -> Vec<u64> {
        vec![0; self.rank]
    }

    /// Reduce signed coordinates into `F_p`.
    pub fn element(&self, coords: &[i64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.rank);
        coords
            .iter()
            .map(|&c| c.rem_euclid(self.p as i64) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| add_mod(a, b, self.p)).collect()
    }

    pub fn scalar_mul(&self, c: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| mul_mod(a, c % self.p, self.p)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.rank];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                axpy(&mut out, mul_mod(xi, yj, self.p), &self.table[i][j], self.p);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        is_zero_vec(x)
    }

    /// Every element of the algebra (`p^d` of them).
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        self.check_enumerable()?;
        let total = self.p.pow(self.rank as u32);
        Ok((0..total)
            .map(|mut idx| {
                (0..self.rank)
                    .map(|_| {
                        let c = idx % self.p;
                        idx /= self.p;
                        c
                    })
                    .collect()
            })
            .collect())
    }

    pub(crate) fn check_enumerable(&self) -> Result<()> {
        if self.rank > self.config.max_rank || self.p > self.config.max_prime {
            return Err(Error::EnumerationBound(format!(
                "rank {} over GF({}) exceeds limits rank <= {}, p <= {}",
                self.rank, self.p, self.config.max_rank, self.config.max_prime
            )));
        }
        Ok(())
    }

    /// Number of subspaces of the algebra, when within limits.
    pub fn subspace_count(&self) -> Result<u64> {
        self.check_enumerable()?;
        subspace_count(self.p, self.rank)
            .ok_or_else(|| Error::EnumerationBound("subspace count overflows".into()))
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vec<u64>>) -> Submodule {
        Submodule::span(self.p, self.rank, vectors)
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::zero(self.p, self.rank)
    }

    pub fn full(&self) -> Submodule {
        Submodule::full(self.p, self.rank)
    }

    /// `R e`.
    pub fn scalars(&self) -> Submodule {
        self.span([self.identity.clone()])
    }

    /// Render an element with the basis names, e.g. `3 + 2*eps`.
    pub fn format_element(&self, x: &[u64]) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, name)| match (c, name.as_str()) {
                (c, "1") => c.to_string(),
                (1, n) => n.to_string(),
                (c, n) => format!("{c}*{n}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn format_submodule(&self, s: &Submodule) -> String {
        let gens: Vec<String> = s.basis().iter().map(|r| self.format_element(r)).collect();
        format!("span{{{}}}", gens.join(", "))
    }
}

/// A multiplicative linear functional with `alpha(e) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<u64>,
}

impl Character {
    /// Values on the basis, after verifying multiplicativity and `alpha(e) = 1`.
    pub fn new(alg: &FiniteAlgebra, values: Vec<u64>) -> Result<Self> {
        let c = Character { values };
        if c.values.len() != alg.rank() || !c.is_character_of(alg) {
            return Err(Error::Precondition("functional is not a character".into()));
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(values: Vec<u64>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn apply(&self, alg: &FiniteAlgebra, x: &[u64]) -> u64 {
        dot(&self.values, x, alg.prime())
    }

    fn is_character_of(&self, alg: &FiniteAlgebra) -> bool {
        let p = alg.prime();
        if self.apply(alg, alg.identity()) != 1 {
            return false;
        }
        (0..alg.rank()).all(|i| {
            (0..alg.rank()).all(|j| {
                self.apply(alg, &alg.structure_constants()[i][j])
                    == mul_mod(self.values[i], self.values[j], p)
            })
        })
    }

    pub fn kernel(&self, alg: &FiniteAlgebra) -> Submodule {
        Submodule::span(alg.prime(), alg.rank(), [self.values.clone()]).annihilator()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vs.join(", "))
    }
}

/// All characters, by brute force over the `p^d` functionals.
pub fn characters(alg: &FiniteAlgebra) -> Result<Vec<Character>> {
    let functionals = alg.elements()?;
    let found = alg.config().execution.map(&functionals, |v| {
        let c = Character::new_unchecked(v.clone());
        c.is_character_of(alg).then_some(c)
    });
    Ok(found.into_iter().flatten().collect())
}
