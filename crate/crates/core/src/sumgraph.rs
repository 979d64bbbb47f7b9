//! Sum-graphs over finite abelian groups.
//!
//! The sum-graph of `G` with respect to `S` has vertex set `G`, with distinct
//! `g, h` adjacent whenever `g + h` lies in `S`. A vertex `g` has degree
//! `|S| - 1` if `2g` lies in `S` and `|S|` otherwise.
//!
//! Its Laplacian is diagonalized by the characters of `G`: a real character
//! `phi` contributes the eigenvalue `|S| - <phi, S>` and a conjugate pair
//! `{phi, conj(phi)}` contributes `|S| +- |<phi, S>|`.

use nalgebra::SymmetricEigen;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian_char::{check_characters, AbelianGroup, CharValue, SubsetPairing};
use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::graph::{Diameter, Graph};
pub use crate::spectrum::{Eigenvalue, Method, SpectralValue, SpectrumReport};
use crate::spectrum::{BRUTE_FORCE_TOLERANCE, CHARACTER_TOLERANCE};

#[derive(Debug, Clone)]
pub struct SumGraph {
    group: AbelianGroup,
    connection: Vec<usize>,
    in_set: Vec<bool>,
    graph: Graph,
}

impl SumGraph {
    /// Materializes the sum-graph of `group` with respect to `set`.
    /// Duplicates in `set` are ignored.
    pub fn build(group: AbelianGroup, set: &[usize], budgets: &Budgets) -> Result<Self> {
        budget::check("sum-graph adjacency", group.order() as u64, budgets.adjacency)?;
        let (connection, in_set) = normalize_set(&group, set)?;
        let n = group.order();
        let mut graph = Graph::empty(n);
        for g in 0..n {
            for h in g + 1..n {
                if in_set[group.add(g, h)] {
                    graph.add_edge(g, h);
                }
            }
        }
        Ok(SumGraph {
            group,
            connection,
            in_set,
            graph,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The connection set, sorted.
    pub fn connection_set(&self) -> &[usize] {
        &self.connection
    }

    pub fn contains(&self, x: usize) -> bool {
        self.in_set[x]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.group.order()
    }

    /// The degree predicted by the sum-graph degree law.
    pub fn predicted_degree(&self, g: usize) -> usize {
        self.connection.len() - usize::from(self.in_set[self.group.double(g)])
    }

    pub fn min_degree(&self) -> usize {
        self.graph.min_degree()
    }

    pub fn diameter(&self) -> Diameter {
        self.graph.diameter()
    }

    pub fn spectrum_via_characters(&self, budgets: &Budgets) -> Result<SpectrumReport> {
        character_spectrum(&self.group, &self.connection, budgets)
    }

    pub fn spectrum_bruteforce(&self, budgets: &Budgets) -> Result<SpectrumReport> {
        bruteforce_spectrum(&self.graph, budgets)
    }
}

fn normalize_set(group: &AbelianGroup, set: &[usize]) -> Result<(Vec<usize>, Vec<bool>)> {
    let mut in_set = vec![false; group.order()];
    for &s in set {
        if s >= group.order() {
            return Err(Error::InvalidInput(format!(
                "connection set element {s} is not in a group of order {}",
                group.order()
            )));
        }
        in_set[s] = true;
    }
    let connection = (0..group.order()).filter(|&x| in_set[x]).collect();
    Ok((connection, in_set))
}

/// Laplacian spectrum of the sum-graph of `group` with respect to `set`,
/// read off from the characters without materializing the graph.
///
/// Characters are visited in index order; `u` is paired with `-u` and each
/// pair handled once, while self-paired `u` (`2u = 0`) are the real
/// characters.
pub fn character_spectrum(group: &AbelianGroup, set: &[usize], budgets: &Budgets) -> Result<SpectrumReport> {
    check_characters(group, budgets)?;
    let (connection, _) = normalize_set(group, set)?;
    let size = connection.len() as i64;
    let pairing = SubsetPairing::new(group, &connection);
    let one = BigUint::one;

    let mut values = Vec::with_capacity(group.order());
    for u in 0..group.order() {
        let minus_u = group.neg(u);
        if minus_u < u {
            continue;
        }
        let sum = pairing.sum(u);
        if minus_u == u {
            let value = match &sum {
                CharValue::Exact(z) => {
                    let m = z.as_integer().expect("real character sums are rational integers");
                    SpectralValue::Exact(BigInt::from(size - m))
                }
                CharValue::Approx(z) => SpectralValue::Approx(size as f64 - z.re),
            };
            values.push((value, one()));
        } else {
            match sum.as_integer() {
                Some(m) => {
                    values.push((SpectralValue::Exact(BigInt::from(size - m.abs())), one()));
                    values.push((SpectralValue::Exact(BigInt::from(size + m.abs())), one()));
                }
                None => {
                    let modulus = sum.to_complex().norm();
                    values.push((SpectralValue::Approx(size as f64 - modulus), one()));
                    values.push((SpectralValue::Approx(size as f64 + modulus), one()));
                }
            }
        }
    }
    Ok(SpectrumReport::from_values(
        Method::Character,
        values,
        CHARACTER_TOLERANCE,
    ))
}

/// Eigenvalues of the explicit Laplacian `D - A` from a dense symmetric
/// eigensolver, grouped within [`BRUTE_FORCE_TOLERANCE`].
pub fn bruteforce_spectrum(graph: &Graph, budgets: &Budgets) -> Result<SpectrumReport> {
    budget::check("dense eigensolve", graph.vertex_count() as u64, budgets.eigensolve)?;
    let eig = SymmetricEigen::new(graph.laplacian());
    let values = eig
        .eigenvalues
        .iter()
        .map(|&x| (SpectralValue::Approx(x), BigUint::one()));
    Ok(SpectrumReport::from_values(
        Method::BruteForce,
        values,
        BRUTE_FORCE_TOLERANCE,
    ))
}

/// Shape of the connection set drawn by [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Empty,
    Singleton,
    Symmetric,
    Arbitrary,
}

/// A random group `Z_m1 x ... x Z_mt` with every `m_i` in `[2, 9]` and order
/// at most `max_order`, together with a random connection set. Cycles through
/// empty, singleton, symmetric and arbitrary sets.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> (AbelianGroup, Vec<usize>, SetKind) {
    assert!(max_order >= 2, "no nontrivial group fits");
    let factors = loop {
        let t = rng.gen_range(1..=3);
        let factors: Vec<u32> = (0..t).map(|_| rng.gen_range(2..=9)).collect();
        if factors.iter().map(|&m| m as usize).product::<usize>() <= max_order {
            break factors;
        }
    };
    let group = AbelianGroup::new(factors).expect("factors are at least 2");
    let n = group.order();
    let kind = [
        SetKind::Empty,
        SetKind::Singleton,
        SetKind::Symmetric,
        SetKind::Arbitrary,
    ][rng.gen_range(0..4)];
    let set = match kind {
        SetKind::Empty => Vec::new(),
        SetKind::Singleton => vec![rng.gen_range(0..n)],
        SetKind::Symmetric => {
            let picks = rng.gen_range(1..=n.div_ceil(2));
            let mut s: Vec<usize> = (0..picks)
                .map(|_| rng.gen_range(0..n))
                .flat_map(|x| [x, group.neg(x)])
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        }
        SetKind::Arbitrary => {
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(rng);
            all.truncate(rng.gen_range(1..=n));
            all.sort_unstable();
            all
        }
    };
    (group, set, kind)
}
