//! Singularity specifications, the classified indecomposable stable objects
//! and the syzygy / shift / translate actions on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A simple singularity of type A_n in Krull dimension d:
/// `k[[x_0,...,x_d]]/(x_0^{n+1} + x_1^2 + ... + x_d^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularitySpec {
    pub n: u32,
    pub d: u32,
}

impl SingularitySpec {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        Ok(SingularitySpec { n, d })
    }

    /// Knoerrer periodicity: the stable category only depends on d mod 2.
    /// The object map on the classified indecomposables is the identity
    /// relabeling, so everything downstream works over the reduced spec.
    pub fn knoerrer_reduce(self) -> SingularitySpec {
        SingularitySpec { n: self.n, d: self.d % 2 }
    }

    pub fn is_reduced(self) -> bool {
        self.d <= 1
    }

    /// Complete ordered list of non-free indecomposable stable objects.
    pub fn classify(self) -> Vec<IndecId> {
        let r = self.knoerrer_reduce();
        let mut ids = Vec::new();
        if r.d == 1 {
            for i in 1..=(r.n / 2) {
                ids.push(IndecId::Ideal(i));
            }
            if r.n % 2 == 1 {
                ids.push(IndecId::BranchPlus);
                ids.push(IndecId::BranchMinus);
            }
        } else {
            for i in 1..=r.n {
                ids.push(IndecId::Jordan(i));
            }
        }
        ids
    }

    pub fn contains(self, id: IndecId) -> bool {
        let r = self.knoerrer_reduce();
        match id {
            IndecId::Ideal(i) => r.d == 1 && i >= 1 && i <= r.n / 2,
            IndecId::BranchPlus | IndecId::BranchMinus => r.d == 1 && r.n % 2 == 1,
            IndecId::Jordan(i) => r.d == 0 && i >= 1 && i <= r.n,
        }
    }

    fn check(self, id: IndecId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownId { spec: self, id })
        }
    }

    /// Syzygy action on stable objects.  An involution on each id set.
    pub fn syzygy(self, id: IndecId) -> Result<IndecId> {
        self.check(id)?;
        let r = self.knoerrer_reduce();
        Ok(match id {
            IndecId::Ideal(i) => IndecId::Ideal(i),
            IndecId::BranchPlus => IndecId::BranchMinus,
            IndecId::BranchMinus => IndecId::BranchPlus,
            IndecId::Jordan(i) => IndecId::Jordan(r.n + 1 - i),
        })
    }

    /// Shift functor `[k]` = syzygy^{-k}.  Since the syzygy is an involution,
    /// only the parity of `k` matters.
    pub fn shift(self, id: IndecId, k: i64) -> Result<IndecId> {
        if k.rem_euclid(2) == 0 {
            self.check(id)?;
            Ok(id)
        } else {
            self.syzygy(id)
        }
    }

    /// AR translate: `tau = [d]` on the reduced ring.
    pub fn tau(self, id: IndecId) -> Result<IndecId> {
        let r = self.knoerrer_reduce();
        self.shift(id, r.d as i64)
    }

    pub fn syzygy_module(self, m: &StableModule) -> Result<StableModule> {
        let mut out = StableModule::zero();
        for (&id, &mult) in m.iter() {
            out.add(self.syzygy(id)?, mult);
        }
        Ok(out)
    }

    pub fn shift_module(self, m: &StableModule, k: i64) -> Result<StableModule> {
        let mut out = StableModule::zero();
        for (&id, &mult) in m.iter() {
            out.add(self.shift(id, k)?, mult);
        }
        Ok(out)
    }
}

impl fmt::Display for SingularitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A:{}:{}", self.n, self.d)
    }
}

impl FromStr for SingularitySpec {
    type Err = Error;

    /// Ring spec string `A:<n>:<d>`, e.g. `A:5:1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("expected A:<n>:<d>, got {s:?}"));
        let mut parts = s.split(':');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("A"), Some(n), Some(d), None) => {
                let n: u32 = n.parse().map_err(|_| bad())?;
                let d: u32 = d.parse().map_err(|_| bad())?;
                SingularitySpec::new(n, d)
            }
            (Some(f), Some(_), Some(_), None) if f != "A" => Err(Error::InvalidSpec(format!(
                "only family A is supported, got {f:?}"
            ))),
            _ => Err(bad()),
        }
    }
}

/// A non-free indecomposable stable object.  The free module is the zero
/// object of the stable category and is never represented.
///
/// Canonical order: `I1 < I2 < ... < N+ < N-` resp. `M1 < ... < Mn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecId {
    /// The ideal `I_i = (x^i, y)` for reduced dimension 1.
    Ideal(u32),
    /// `N_+ = R/(x^{(n+1)/2} + sqrt(-1) y)`, odd n, reduced dimension 1.
    BranchPlus,
    /// `N_- = R/(x^{(n+1)/2} - sqrt(-1) y)`, odd n, reduced dimension 1.
    BranchMinus,
    /// `M_i = k[x]/(x^i)` over `k[x]/(x^{n+1})`, reduced dimension 0.
    Jordan(u32),
}

impl fmt::Display for IndecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecId::Ideal(i) => write!(f, "I{i}"),
            IndecId::BranchPlus => write!(f, "N+"),
            IndecId::BranchMinus => write!(f, "N-"),
            IndecId::Jordan(i) => write!(f, "M{i}"),
        }
    }
}

// JSON output renders everything in the expression grammar.
impl Serialize for SingularitySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for IndecId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for StableModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// A finite multiset of non-free indecomposables: an object of the stable
/// category up to isomorphism (free summands erased).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableModule {
    multiplicities: BTreeMap<IndecId, u32>,
}

impl StableModule {
    pub fn zero() -> Self {
        StableModule::default()
    }

    pub fn indec(id: IndecId) -> Self {
        let mut m = StableModule::zero();
        m.add(id, 1);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// The multiplicity of `id` as a direct summand.
    pub fn mult(&self, id: IndecId) -> u32 {
        self.multiplicities.get(&id).copied().unwrap_or(0)
    }

    pub fn add(&mut self, id: IndecId, mult: u32) {
        if mult > 0 {
            *self.multiplicities.entry(id).or_insert(0) += mult;
        }
    }

    /// Removes `mult` copies of `id`; panics if not present.
    pub fn remove(&mut self, id: IndecId, mult: u32) {
        if mult == 0 {
            return;
        }
        let entry = self.multiplicities.get_mut(&id).expect("summand not present");
        assert!(*entry >= mult, "summand multiplicity underflow");
        *entry -= mult;
        if *entry == 0 {
            self.multiplicities.remove(&id);
        }
    }

    pub fn direct_sum(&self, other: &StableModule) -> StableModule {
        let mut out = self.clone();
        for (&id, &mult) in other.iter() {
            out.add(id, mult);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndecId, &u32)> {
        self.multiplicities.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = IndecId> + '_ {
        self.multiplicities.keys().copied()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    /// Cancels the largest common direct summand of `a` and `b`.
    pub fn cancel_common(a: &StableModule, b: &StableModule) -> (StableModule, StableModule) {
        let mut ra = a.clone();
        let mut rb = b.clone();
        for id in a.support().collect::<Vec<_>>() {
            let c = ra.mult(id).min(rb.mult(id));
            if c > 0 {
                ra.remove(id, c);
                rb.remove(id, c);
            }
        }
        (ra, rb)
    }

    /// Renders in the module expression grammar; inverse of [`parse_module_expr`].
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (&id, &mult) in self.iter() {
            if mult == 1 {
                terms.push(id.to_string());
            } else {
                terms.push(format!("{mult}*{id}"));
            }
        }
        terms.join(" + ")
    }
}

/// Parses the module expression grammar over a given ring:
/// `expr := '0' | term ('+' term)* ; term := [uint '*'] ind ;
/// ind := 'I' uint | 'N+' | 'N-' | 'M' uint`.
pub fn parse_module_expr(spec: SingularitySpec, text: &str) -> Result<StableModule> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_uint = |pos: &mut usize| -> Result<u32> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(err(start, "expected an unsigned integer"));
        }
        text[start..*pos]
            .parse()
            .map_err(|_| err(start, "integer out of range"))
    };

    skip_ws(&mut pos);
    if pos < bytes.len() && bytes[pos] == b'0' {
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "trailing input after '0'"));
        }
        return Ok(StableModule::zero());
    }

    let mut module = StableModule::zero();
    loop {
        skip_ws(&mut pos);
        let mut mult = 1u32;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            mult = read_uint(&mut pos)?;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'*' {
                return Err(err(pos, "expected '*' after multiplicity"));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos >= bytes.len() {
            return Err(err(pos, "expected an indecomposable"));
        }
        let id = match bytes[pos] {
            b'I' => {
                pos += 1;
                IndecId::Ideal(read_uint(&mut pos)?)
            }
            b'M' => {
                pos += 1;
                IndecId::Jordan(read_uint(&mut pos)?)
            }
            b'N' => {
                pos += 1;
                if pos >= bytes.len() {
                    return Err(err(pos, "expected '+' or '-' after 'N'"));
                }
                let sign = bytes[pos];
                pos += 1;
                match sign {
                    b'+' => IndecId::BranchPlus,
                    b'-' => IndecId::BranchMinus,
                    _ => return Err(err(pos - 1, "expected '+' or '-' after 'N'")),
                }
            }
            _ => return Err(err(pos, "expected 'I', 'M', 'N+' or 'N-'")),
        };
        if !spec.contains(id) {
            return Err(Error::UnknownId { spec, id });
        }
        module.add(id, mult);
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(err(pos, "expected '+' between terms"));
        }
        pos += 1;
    }
    Ok(module)
}
