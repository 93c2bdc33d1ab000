//! Greedy minor embedding of a pairwise program onto a Chimera graph.
//!
//! Variables are placed in order of descending logical degree. A variable with
//! placed neighbours grows a chain from the free qubit closest (in total BFS
//! distance) to all of their chains; seeded restarts reshuffle ties. The search
//! is incomplete: failure is an outcome, not an error.

use super::chimera::ChimeraGraph;
use super::quadratize::QuadraticProgram;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedOptions {
    pub tries: usize,
    pub seed: u64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { tries: 32, seed: 0 }
    }
}

/// Logical variable to hardware chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding {
    /// Sorted qubits per variable.
    pub chains: BTreeMap<usize, Vec<usize>>,
    /// Magnitude of the ferromagnetic chain coupling; the Ising value is `−|chain_strength|`.
    pub chain_strength: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    MissingChain(usize),
    EmptyChain(usize),
    InactiveQubit { var: usize, qubit: usize },
    SharedQubit { qubit: usize, vars: (usize, usize) },
    Disconnected(usize),
    MissingCoupler(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub chains: BTreeMap<usize, Vec<usize>>,
    pub chain_strength: f64,
    pub unused_qubits: Vec<usize>,
    pub max_chain_length: usize,
}

impl Embedding {
    pub fn chain(&self, v: usize) -> &[usize] {
        self.chains.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Ising coupling applied to chain edges.
    pub fn chain_coupling(&self) -> f64 {
        -self.chain_strength.abs()
    }

    /// First hardware edge (in sorted order) joining the chains of `u` and `v`.
    pub fn coupler(&self, u: usize, v: usize, hw: &ChimeraGraph) -> Option<(usize, usize)> {
        let (cu, cv) = (self.chain(u), self.chain(v));
        hw.edges().iter().copied().find(|&(a, b)| (cu.contains(&a) && cv.contains(&b)) || (cu.contains(&b) && cv.contains(&a)))
    }

    /// Hardware edges inside each chain.
    pub fn chain_edges(&self, hw: &ChimeraGraph) -> Vec<(usize, usize)> {
        let owner = self.owner();
        hw.edges().iter().copied().filter(|(a, b)| owner.get(a).is_some_and(|v| owner.get(b) == Some(v))).collect()
    }

    fn owner(&self) -> BTreeMap<usize, usize> {
        self.chains.iter().flat_map(|(&v, c)| c.iter().map(move |&q| (q, v))).collect()
    }

    /// Checks every structural invariant against the logical edge list.
    pub fn verify(&self, num_vars: usize, edges: &[(usize, usize)], hw: &ChimeraGraph) -> Result<(), EmbeddingViolation> {
        let mut owner = BTreeMap::new();
        for v in 0..num_vars {
            let chain = self.chains.get(&v).ok_or(EmbeddingViolation::MissingChain(v))?;
            let &start = chain.first().ok_or(EmbeddingViolation::EmptyChain(v))?;
            for &q in chain {
                if !hw.is_active(q) {
                    return Err(EmbeddingViolation::InactiveQubit { var: v, qubit: q });
                }
                if let Some(u) = owner.insert(q, v) {
                    return Err(EmbeddingViolation::SharedQubit { qubit: q, vars: (u, v) });
                }
            }
            let members: BTreeSet<usize> = chain.iter().copied().collect();
            let mut seen = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(q) = queue.pop_front() {
                for &w in hw.neighbors(q) {
                    if members.contains(&w) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            if seen.len() != members.len() {
                return Err(EmbeddingViolation::Disconnected(v));
            }
        }
        match edges.iter().find(|&&(u, v)| self.coupler(u, v, hw).is_none()) {
            Some(&(u, v)) => Err(EmbeddingViolation::MissingCoupler(u, v)),
            None => Ok(()),
        }
    }

    pub fn report(&self, hw: &ChimeraGraph) -> EmbeddingReport {
        let owner = self.owner();
        EmbeddingReport {
            chains: self.chains.clone(),
            chain_strength: self.chain_strength,
            unused_qubits: hw.active_qubits().filter(|q| !owner.contains_key(q)).collect(),
            max_chain_length: self.chains.values().map(Vec::len).max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedOutcome {
    Found(Embedding),
    NotFound { attempts: usize },
}

impl EmbedOutcome {
    pub fn found(self) -> Option<Embedding> {
        match self {
            EmbedOutcome::Found(e) => Some(e),
            EmbedOutcome::NotFound { .. } => None,
        }
    }
}

/// Variable pairs with a nonzero coupling.
pub fn logical_edges(qp: &QuadraticProgram) -> Vec<(usize, usize)> {
    qp.quadratic.iter().filter(|(_, &c)| c != 0.0).map(|(&k, _)| k).collect()
}

pub fn embed_minor(qp: &QuadraticProgram, hw: &ChimeraGraph, chain_strength: f64, opts: EmbedOptions) -> EmbedOutcome {
    embed_graph(qp.num_vars(), &logical_edges(qp), hw, chain_strength, opts)
}

pub fn embed_graph(num_vars: usize, edges: &[(usize, usize)], hw: &ChimeraGraph, chain_strength: f64, opts: EmbedOptions) -> EmbedOutcome {
    let mut nbrs = vec![Vec::new(); num_vars];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for attempt in 0..opts.tries {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(attempt as u64);
        if let Some(chains) = attempt_embed(&nbrs, hw, &mut rng, attempt == 0) {
            let emb = Embedding { chains, chain_strength: chain_strength.abs() };
            if emb.verify(num_vars, edges, hw).is_ok() {
                return EmbedOutcome::Found(emb);
            }
        }
    }
    EmbedOutcome::NotFound { attempts: opts.tries }
}

fn attempt_embed(nbrs: &[Vec<usize>], hw: &ChimeraGraph, rng: &mut ChaCha8Rng, canonical: bool) -> Option<BTreeMap<usize, Vec<usize>>> {
    let nq = hw.num_qubits();
    let mut order: Vec<usize> = (0..nbrs.len()).collect();
    if !canonical {
        order.shuffle(rng);
    }
    order.sort_by_key(|&v| std::cmp::Reverse(nbrs[v].len()));
    let mut owner: Vec<Option<usize>> = vec![None; nq];
    let mut chains: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let free = |owner: &[Option<usize>], q: usize| hw.is_active(q) && owner[q].is_none();

    for v in order {
        let placed: Vec<usize> = nbrs[v].iter().copied().filter(|u| chains.contains_key(u)).collect();
        let chain = if placed.is_empty() {
            let candidates: Vec<usize> = (0..nq).filter(|&q| free(&owner, q)).collect();
            let best = candidates.iter().map(|&q| hw.neighbors(q).iter().filter(|&&w| free(&owner, w)).count()).max()?;
            let top: Vec<usize> =
                candidates.into_iter().filter(|&q| hw.neighbors(q).iter().filter(|&&w| free(&owner, w)).count() == best).collect();
            vec![if canonical { top[0] } else { top[rng.gen_range(0..top.len())] }]
        } else {
            // BFS from each neighbouring chain through free qubits.
            let searches: Vec<(Vec<usize>, Vec<usize>)> = placed
                .iter()
                .map(|u| {
                    let mut dist = vec![usize::MAX; nq];
                    let mut parent = vec![usize::MAX; nq];
                    let mut queue: VecDeque<usize> = chains[u].iter().copied().collect();
                    chains[u].iter().for_each(|&q| dist[q] = 0);
                    while let Some(q) = queue.pop_front() {
                        for &w in hw.neighbors(q) {
                            if dist[w] == usize::MAX && free(&owner, w) {
                                dist[w] = dist[q] + 1;
                                parent[w] = q;
                                queue.push_back(w);
                            }
                        }
                    }
                    (dist, parent)
                })
                .collect();
            let score = |q: usize| -> Option<usize> {
                searches.iter().try_fold(0usize, |acc, (d, _)| (d[q] != usize::MAX).then(|| acc + d[q]))
            };
            let scored: Vec<(usize, usize)> = (0..nq).filter(|&q| free(&owner, q)).filter_map(|q| score(q).map(|s| (q, s))).collect();
            let best = scored.iter().map(|&(_, s)| s).min()?;
            let top: Vec<usize> = scored.into_iter().filter(|&(_, s)| s == best).map(|(q, _)| q).collect();
            let root = if canonical { top[0] } else { top[rng.gen_range(0..top.len())] };
            let mut chain = BTreeSet::from([root]);
            for (dist, parent) in &searches {
                let mut q = root;
                while dist[q] > 1 {
                    q = parent[q];
                    chain.insert(q);
                }
            }
            chain.into_iter().collect()
        };
        chain.iter().for_each(|&q| owner[q] = Some(v));
        chains.insert(v, chain);
    }
    Some(chains)
}
