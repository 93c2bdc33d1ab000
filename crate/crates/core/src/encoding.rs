//! Permutations, integer strings, binary strings and the linear map σ(s).
//!
//! Integer string `s` over `N` vertices uses `U = ⌈log₂N⌉` bits per entry,
//! little-endian within each field. Field `i` occupies global bits `iU..iU+U`.
//! A computational-basis index has global bit `g` as its bit `g`, so entry `s_i`
//! is simply `(index >> iU) & M`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Register geometry for an `N`-vertex instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Register {
    /// Vertex count `N`.
    pub n: usize,
    /// Bits per entry, `⌈log₂N⌉`.
    pub u: usize,
}

impl Register {
    /// Geometry for `N ≥ 2` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!("an instance needs N >= 2 vertices, got {n}")));
        }
        Ok(Register { n, u: bits_for(n) })
    }

    /// Largest representable entry, `2^U − 1`.
    pub fn max_entry(&self) -> u32 {
        (1u32 << self.u) - 1
    }

    /// Total qubits, `L = N·U`.
    pub fn qubits(&self) -> usize {
        self.n * self.u
    }

    /// Hilbert-space dimension `2^L`, or `None` if it does not fit in `usize`.
    pub fn dimension(&self) -> Option<usize> {
        1usize.checked_shl(self.qubits() as u32)
    }

    /// Entries of the string encoded by basis index `idx`, written into `out`.
    #[inline]
    pub fn decode_into(&self, idx: usize, out: &mut [u32]) {
        let mask = self.max_entry() as usize;
        for (i, slot) in out.iter_mut().enumerate().take(self.n) {
            *slot = ((idx >> (i * self.u)) & mask) as u32;
        }
    }

    /// Basis index of an entry sequence.
    #[inline]
    pub fn encode(&self, entries: &[u32]) -> usize {
        entries.iter().enumerate().fold(0, |acc, (i, &e)| acc | ((e as usize) << (i * self.u)))
    }
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn bits_for(n: usize) -> usize {
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// A search-space point `s₀ … s_{N−1}` with entries in `[0, 2^U − 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerString {
    reg: Register,
    entries: Vec<u32>,
}

impl IntegerString {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        let reg = Register::new(n)?;
        if entries.len() != n {
            return Err(Error::input(format!("integer string has {} entries, expected {n}", entries.len())));
        }
        if let Some(&e) = entries.iter().find(|&&e| e > reg.max_entry()) {
            return Err(Error::input(format!("entry {e} exceeds 2^U - 1 = {}", reg.max_entry())));
        }
        Ok(IntegerString { reg, entries })
    }

    /// String encoded by a computational-basis index.
    pub fn from_basis_index(reg: Register, idx: usize) -> Self {
        let mut entries = vec![0; reg.n];
        reg.decode_into(idx, &mut entries);
        IntegerString { reg, entries }
    }

    pub fn register(&self) -> Register {
        self.reg
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn basis_index(&self) -> usize {
        self.reg.encode(&self.entries)
    }

    /// Entries as a permutation, when the string is one.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        is_permutation_string(self).then(|| self.entries.iter().map(|&e| e as usize).collect())
    }
}

impl fmt::Display for IntegerString {
    /// Concatenated digits (`3210`) when every entry is a single digit, otherwise space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.entries.iter().all(|&e| e < 10) { "" } else { " " };
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for IntegerString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerString({self})")
    }
}

impl FromStr for IntegerString {
    type Err = Error;

    /// Accepts `"0231"` or `"0 2 3 1"`; the length fixes `N`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Option<Vec<u32>> = if s.contains(char::is_whitespace) {
            s.split_whitespace().map(|t| t.parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let entries = entries.ok_or_else(|| Error::input(format!("bad integer string {s:?}")))?;
        IntegerString::new(entries.len(), entries)
    }
}

impl Serialize for IntegerString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// `N·U` bits in global order; bit `g` has weight `2^g` in the basis index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryString {
    reg: Register,
    bits: Vec<u8>,
}

impl BinaryString {
    /// Build from bits in global order.
    pub fn new(n: usize, bits: Vec<u8>) -> Result<Self> {
        let reg = Register::new(n)?;
        if bits.len() != reg.qubits() {
            return Err(Error::input(format!("binary string has {} bits, expected N·U = {}", bits.len(), reg.qubits())));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::input("binary string entries must be 0 or 1"));
        }
        Ok(BinaryString { reg, bits })
    }

    pub fn from_basis_index(reg: Register, idx: usize) -> Self {
        BinaryString { reg, bits: (0..reg.qubits()).map(|g| ((idx >> g) & 1) as u8).collect() }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn register(&self) -> Register {
        self.reg
    }

    pub fn basis_index(&self) -> usize {
        self.bits.iter().enumerate().fold(0, |acc, (g, &b)| acc | ((b as usize) << g))
    }
}

impl fmt::Display for BinaryString {
    /// Fields of `U` bits, each written least-significant bit first, separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields: Vec<String> =
            self.bits.chunks(self.reg.u).map(|c| c.iter().map(|b| char::from(b'0' + b)).collect()).collect();
        f.write_str(&fields.join(" "))
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryString({self})")
    }
}

impl Serialize for BinaryString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// The `N × N` 0/1 matrix σ(s): column `j` is `e_{s_j}` when `s_j < N`, else zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    n: usize,
    data: Vec<u8>,
    is_permutation: bool,
}

impl LinearMap {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn is_permutation(&self) -> bool {
        self.is_permutation
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    /// `σ · σᵀ` with integer entries.
    pub fn gram(&self) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n).map(|k| (self.get(i, k) * self.get(j, k)) as u32).sum();
            }
        }
        out
    }
}

/// Integer string of a permutation's bottom row.
pub fn perm_to_integer_string(perm: &[usize]) -> Result<IntegerString> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n {
            return Err(Error::input(format!("image {p} out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::input(format!("image {p} repeated")));
        }
    }
    IntegerString::new(n, perm.iter().map(|&p| p as u32).collect())
}

pub fn integer_string_to_bits(s: &IntegerString) -> BinaryString {
    BinaryString::from_basis_index(s.reg, s.basis_index())
}

pub fn bits_to_integer_string(b: &BinaryString, n: usize) -> Result<IntegerString> {
    let reg = Register::new(n)?;
    if b.bits.len() != reg.qubits() {
        return Err(Error::input(format!("{} bits do not encode N = {n} (need {})", b.bits.len(), reg.qubits())));
    }
    Ok(IntegerString::from_basis_index(reg, b.basis_index()))
}

pub fn sigma_of(s: &IntegerString) -> LinearMap {
    let n = s.reg.n;
    let mut data = vec![0; n * n];
    for (j, &sj) in s.entries.iter().enumerate() {
        if (sj as usize) < n {
            data[sj as usize * n + j] = 1;
        }
    }
    LinearMap { n, data, is_permutation: is_permutation_string(s) }
}

pub fn is_permutation_string(s: &IntegerString) -> bool {
    let n = s.reg.n;
    let mut seen = 0u128;
    let mut seen_big = vec![false; if n > 128 { n } else { 0 }];
    s.entries.iter().all(|&e| {
        let e = e as usize;
        if e >= n {
            return false;
        }
        if n <= 128 {
            let bit = 1u128 << e;
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        } else {
            !std::mem::replace(&mut seen_big[e], true)
        }
    })
}
