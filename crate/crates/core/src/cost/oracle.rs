use super::Objective;
use crate::encoding::IntegerString;
use crate::error::{Error, Result};
use crate::exec::Exec;
use num_bigint::BigUint;
use serde::{Serialize, Serializer};

/// Default cap on `N·U` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BITS: usize = 24;

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Refuse instances with more than this many bits.
    pub max_bits: usize,
    pub exec: Exec,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_bits: DEFAULT_ENUMERATION_BITS, exec: Exec::default() }
    }
}

/// Exact minimum of a cost function with every minimizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundSummary {
    #[serde(serialize_with = "number_or_string")]
    pub min_cost: BigUint,
    pub degeneracy: usize,
    /// Minimizers in lexicographic order of their entries.
    pub minimizers: Vec<IntegerString>,
    /// `min_cost == 0`: isomorphic (GI) or contained (SGI).
    pub is_isomorphic: bool,
}

fn number_or_string<S: Serializer>(v: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => ser.serialize_u64(x),
        Err(_) => ser.collect_str(v),
    }
}

/// Block size for the enumeration; small enough to balance, large enough to amortize.
const BLOCK: usize = 1 << 14;

/// Enumerate all `2^{NU}` strings and return the exact ground set.
pub fn brute_force_ground<O>(inst: &O, cfg: &OracleConfig) -> Result<GroundSummary>
where
    O: Objective,
    O::Value: Into<BigUint>,
{
    let reg = inst.register();
    let bits = reg.qubits();
    if bits > cfg.max_bits {
        return Err(Error::Capacity { what: "enumeration bits (N·U)", requested: bits, limit: cfg.max_bits });
    }
    let dim = 1usize << bits;
    let fold = |range: std::ops::Range<usize>| {
        let mut entries = vec![0u32; reg.n];
        let mut scratch = Vec::new();
        let mut best: Option<O::Value> = None;
        let mut argmin = Vec::new();
        for idx in range {
            reg.decode_into(idx, &mut entries);
            let c = inst.eval(&entries, &mut scratch);
            match best.as_ref().map(|b| c.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => argmin.push(idx),
                _ => {
                    best = Some(c);
                    argmin.clear();
                    argmin.push(idx);
                }
            }
        }
        (best, argmin)
    };
    let merge = |a: (Option<O::Value>, Vec<usize>), b: (Option<O::Value>, Vec<usize>)| match (&a.0, &b.0) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => {
                let (best, mut ia) = a;
                ia.extend(b.1);
                (best, ia)
            }
        },
    };
    let (best, argmin) = crate::exec::for_len(cfg.exec, dim)
        .map_reduce(dim, BLOCK, fold, merge)
        .expect("enumeration space is non-empty");
    let min_cost: BigUint = best.expect("at least one string was evaluated").into();
    let mut minimizers: Vec<IntegerString> = argmin.into_iter().map(|i| IntegerString::from_basis_index(reg, i)).collect();
    minimizers.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(GroundSummary {
        is_isomorphic: min_cost == BigUint::ZERO,
        degeneracy: minimizers.len(),
        min_cost,
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{GiInstance, SgiInstance};
    use crate::graphs::{fixtures, make_cycle};

    fn strings(g: &GroundSummary) -> Vec<String> {
        g.minimizers.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn fig2_ground() {
        let (g, gp) = fixtures::fig2();
        let r = brute_force_ground(&GiInstance::new(g, gp).unwrap(), &OracleConfig::default()).unwrap();
        assert_eq!(r.min_cost, BigUint::ZERO);
        assert_eq!(strings(&r), vec!["0132", "0231", "3102", "3201"]);
        assert!(r.is_isomorphic);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let (g, gp) = fixtures::fig1();
        let inst = GiInstance::new(g, gp).unwrap();
        let seq = brute_force_ground(&inst, &OracleConfig { exec: Exec::Sequential, ..Default::default() }).unwrap();
        let par = brute_force_ground(&inst, &OracleConfig { exec: Exec::Parallel, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
        assert_eq!((seq.min_cost, seq.degeneracy), (BigUint::from(4u32), 16));
    }

    #[test]
    fn capacity_guard() {
        let inst = GiInstance::automorphism(make_cycle(5).unwrap()).unwrap();
        let err = brute_force_ground(&inst, &OracleConfig { max_bits: 12, ..Default::default() }).unwrap_err();
        assert!(matches!(err, Error::Capacity { requested: 15, limit: 12, .. }));
    }

    #[test]
    fn sgi_ground() {
        let (g, h) = fixtures::sgi_pair("c4-p3").unwrap();
        let r = brute_force_ground(&SgiInstance::new(g, h).unwrap(), &OracleConfig::default()).unwrap();
        assert!(r.is_isomorphic);
        let (g, h) = fixtures::sgi_pair("matching4-p3").unwrap();
        let r = brute_force_ground(&SgiInstance::new(g, h).unwrap(), &OracleConfig::default()).unwrap();
        assert!(r.min_cost > BigUint::ZERO);
    }

    #[test]
    fn json_schema() {
        let inst = GiInstance::automorphism(make_cycle(4).unwrap()).unwrap();
        let r = brute_force_ground(&inst, &OracleConfig::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["min_cost"], 0);
        assert_eq!(v["degeneracy"], 8);
        assert_eq!(v["is_isomorphic"], true);
        assert_eq!(v["minimizers"][0], "0123");
    }
}
