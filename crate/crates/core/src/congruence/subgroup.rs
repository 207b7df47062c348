//! Congruence subgroups of GL(2,Z) given by membership predicates.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::Mat;

/// An integer 2×2 matrix `[a, b, c, d]` (row-major).
pub type M2 = [i64; 4];

pub const ID: M2 = [1, 0, 0, 1];
pub const S: M2 = [0, -1, 1, 0];
pub const T: M2 = [1, 1, 0, 1];
pub const T_INV: M2 = [1, -1, 0, 1];
pub const Y: M2 = [0, 1, 1, 0];

pub fn mul(x: &M2, y: &M2) -> M2 {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

pub fn det(x: &M2) -> i64 {
    x[0] * x[3] - x[1] * x[2]
}

/// Inverse of a unimodular matrix.
pub fn inv(x: &M2) -> M2 {
    let d = det(x);
    debug_assert!(d.abs() == 1);
    [x[3] * d, -x[1] * d, -x[2] * d, x[0] * d]
}

pub fn neg(x: &M2) -> M2 {
    [-x[0], -x[1], -x[2], -x[3]]
}

/// Canonical sign representative of `±x`.
pub fn projective(x: &M2) -> M2 {
    let first = x.iter().copied().find(|&e| e != 0).unwrap_or(1);
    if first < 0 {
        neg(x)
    } else {
        *x
    }
}

pub fn to_mat(x: &M2) -> Mat {
    Mat::from_int_rows(&[[x[0], x[1]], [x[2], x[3]]])
}

pub fn from_mat(m: &Mat) -> Result<M2> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: m.rows().max(m.cols()) });
    }
    let e = m.to_i64_entries().ok_or(Error::NonIntegerInput)?;
    Ok([e[0], e[1], e[2], e[3]])
}

fn md(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    All,
    Rule(Rule),
    /// Preimage of a set of residues mod `modulus`.
    Residues { modulus: i64, residues: BTreeSet<M2> },
}

/// The set-builder conditions recognised by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    /// `c ≡ 0 mod 2`.
    Gamma0Two,
    /// `b ≡ 0 mod 2`.
    Gamma0TwoT,
    /// `b, c ≡ 0` and `a, d ≡ 1 mod 2`.
    GammaTwo,
    /// `X ∈ Γ(2)` or `X·Y ∈ Γ(2)`.
    GammaTwoY,
    /// `b ≡ 0 mod n`.
    UpperZero(i64),
    /// `b, c ≡ 0 mod 3`.
    GammaThree,
    /// `b ≡ 0` and `d ≡ r mod n`.
    UpperZeroD(i64, i64),
    /// `b, c ≡ 0`, `a ≡ r` and `d ≡ s mod 3`.
    DiagonalThree(i64, i64),
    /// `c ≡ 0 mod 2`, `b ≡ 0` and `d ≡ r mod 4`.
    TwoFour(i64),
}

impl Rule {
    fn eval(self, x: &M2) -> bool {
        let [a, b, c, d] = *x;
        match self {
            Rule::Gamma0Two => md(c, 2) == 0,
            Rule::Gamma0TwoT => md(b, 2) == 0,
            Rule::GammaTwo => md(b, 2) == 0 && md(c, 2) == 0 && md(a, 2) == 1 && md(d, 2) == 1,
            Rule::GammaTwoY => Rule::GammaTwo.eval(x) || Rule::GammaTwo.eval(&mul(x, &Y)),
            Rule::UpperZero(n) => md(b, n) == 0,
            Rule::GammaThree => md(b, 3) == 0 && md(c, 3) == 0,
            Rule::UpperZeroD(n, r) => md(b, n) == 0 && md(d, n) == r,
            Rule::DiagonalThree(r, s) => md(b, 3) == 0 && md(c, 3) == 0 && md(a, 3) == r && md(d, 3) == s,
            Rule::TwoFour(r) => md(c, 2) == 0 && md(b, 4) == 0 && md(d, 4) == r,
        }
    }

    /// A modulus for which membership depends only on residues.
    fn modulus(self) -> i64 {
        match self {
            Rule::Gamma0Two | Rule::Gamma0TwoT | Rule::GammaTwo | Rule::GammaTwoY => 2,
            Rule::UpperZero(n) | Rule::UpperZeroD(n, _) => n,
            Rule::GammaThree | Rule::DiagonalThree(..) => 3,
            Rule::TwoFour(_) => 4,
        }
    }
}

/// A named subset of GL(2,Z), optionally restricted to determinant +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSubgroup {
    name: String,
    kind: Kind,
    positive_part: bool,
}

impl Serialize for CongruenceSubgroup {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.name)
    }
}

impl fmt::Display for CongruenceSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Base names accepted by [`CongruenceSubgroup::named`].
pub const SUBGROUP_NAMES: [&str; 21] = [
    "SL(2,Z)",
    "GL(2,Z)",
    "Gamma0(2)",
    "Gamma0(2)^t",
    "Gamma(2)",
    "Gamma(2)Y",
    "Gamma0(3)",
    "Gamma(3)",
    "Gamma0(4)",
    "Gamma0(6)",
    "Gamma0_1(3)",
    "Gamma0_2(3)",
    "Gamma1_2(3)",
    "Gamma2_1(3)",
    "Gamma0_1(4)",
    "Gamma0_3(4)",
    "Gamma0_1(2,4)",
    "Gamma0_3(2,4)",
    "Gamma0_1(6)",
    "Gamma0_5(6)",
    "<Gamma0_1(6),Gamma0_5(6)>",
];

/// Resolves a base name, also accepting compact spellings such as `Gamma2` or `gamma0_1(6)`.
fn resolve_base(base: &str) -> Option<&'static str> {
    let squash = |s: &str| -> String {
        s.chars().filter(|c| !matches!(c, '(' | ')' | ',' | ' ')).collect::<String>().to_ascii_lowercase()
    };
    let key = squash(base);
    SUBGROUP_NAMES.iter().copied().find(|n| *n == base).or_else(|| SUBGROUP_NAMES.iter().copied().find(|n| squash(n) == key))
}

fn rule_for(base: &str) -> Option<Kind> {
    let r = match base {
        "SL(2,Z)" | "GL(2,Z)" => return Some(Kind::All),
        "Gamma0(2)" => Rule::Gamma0Two,
        "Gamma0(2)^t" => Rule::Gamma0TwoT,
        "Gamma(2)" => Rule::GammaTwo,
        "Gamma(2)Y" => Rule::GammaTwoY,
        "Gamma0(3)" => Rule::UpperZero(3),
        "Gamma(3)" => Rule::GammaThree,
        "Gamma0(4)" => Rule::UpperZero(4),
        "Gamma0(6)" => Rule::UpperZero(6),
        "Gamma0_1(3)" => Rule::UpperZeroD(3, 1),
        "Gamma0_2(3)" => Rule::UpperZeroD(3, 2),
        "Gamma1_2(3)" => Rule::DiagonalThree(1, 2),
        "Gamma2_1(3)" => Rule::DiagonalThree(2, 1),
        "Gamma0_1(4)" => Rule::UpperZeroD(4, 1),
        "Gamma0_3(4)" => Rule::UpperZeroD(4, 3),
        "Gamma0_1(2,4)" => Rule::TwoFour(1),
        "Gamma0_3(2,4)" => Rule::TwoFour(3),
        "Gamma0_1(6)" => Rule::UpperZeroD(6, 1),
        "Gamma0_5(6)" => Rule::UpperZeroD(6, 5),
        _ => return None,
    };
    Some(Kind::Rule(r))
}

impl CongruenceSubgroup {
    /// Looks up a subgroup by its ASCII name; a trailing `+` selects the
    /// determinant +1 part, and `SL(2,Z)` always has it.
    pub fn named(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        let (base, plus) = match trimmed.strip_suffix('+') {
            Some(b) => (b, true),
            None => (trimmed, false),
        };
        if let Some(inner) = base.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            let parts: Vec<&str> = split_generators(inner);
            let subs = parts.iter().map(|p| CongruenceSubgroup::named(p)).collect::<Result<Vec<_>>>()?;
            let mut g = CongruenceSubgroup::generated_by(&subs)?;
            g.name = trimmed.to_string();
            g.positive_part = plus;
            return Ok(g);
        }
        let base = resolve_base(base).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let kind = rule_for(base).expect("listed name");
        let name = if plus { format!("{base}+") } else { base.to_string() };
        Ok(CongruenceSubgroup { name, kind, positive_part: plus || base == "SL(2,Z)" })
    }

    /// The subgroup generated by the union of `parts`, computed as the
    /// preimage of the closure of their residues modulo a common modulus.
    pub fn generated_by(parts: &[CongruenceSubgroup]) -> Result<Self> {
        let mut modulus = 1i64;
        for p in parts {
            match &p.kind {
                Kind::All => return Ok(CongruenceSubgroup { name: "GL(2,Z)".into(), kind: Kind::All, positive_part: false }),
                Kind::Rule(r) => modulus = num_integer::lcm(modulus, r.modulus()),
                Kind::Residues { modulus: m, .. } => modulus = num_integer::lcm(modulus, *m),
            }
        }
        let mut residues: BTreeSet<M2> = BTreeSet::new();
        for a in 0..modulus {
            for b in 0..modulus {
                for c in 0..modulus {
                    for d in 0..modulus {
                        let x = [a, b, c, d];
                        let dt = md(det(&x), modulus);
                        let unimodular = dt == 1 % modulus || dt == md(-1, modulus);
                        if unimodular && parts.iter().any(|p| p.contains_residue(&x)) {
                            residues.insert(x);
                        }
                    }
                }
            }
        }
        loop {
            let current: Vec<M2> = residues.iter().copied().collect();
            let mut grew = false;
            for x in &current {
                for y in &current {
                    let p = mul(x, y).map(|e| md(e, modulus));
                    grew |= residues.insert(p);
                }
            }
            if !grew {
                break;
            }
        }
        let name = format!("<{}>", parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(","));
        Ok(CongruenceSubgroup { name, kind: Kind::Residues { modulus, residues }, positive_part: false })
    }

    /// Membership for a residue quadruple, valid for rule-based subgroups.
    fn contains_residue(&self, x: &M2) -> bool {
        match &self.kind {
            Kind::All => true,
            Kind::Rule(r) => r.eval(x),
            Kind::Residues { modulus, residues } => residues.contains(&x.map(|e| md(e, *modulus))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn positive_part(&self) -> bool {
        self.positive_part
    }

    /// The determinant +1 part of this subgroup.
    pub fn positive(&self) -> Self {
        let mut g = self.clone();
        if !g.positive_part {
            g.positive_part = true;
            g.name.push('+');
        }
        g
    }

    /// Membership for an integer matrix already known to be unimodular.
    pub fn contains_entries(&self, x: M2) -> bool {
        let d = det(&x);
        if d.abs() != 1 || (self.positive_part && d != 1) {
            return false;
        }
        self.contains_residue(&x)
    }

    /// `true` iff `±x` lies in the subgroup (membership in the projective image).
    pub fn contains_projective(&self, x: &M2) -> bool {
        self.contains_entries(*x) || self.contains_entries(neg(x))
    }

    /// `true` iff the identity passes, i.e. the set can be a group.
    pub fn contains_identity(&self) -> bool {
        self.contains_entries(ID)
    }
}

fn split_generators(inner: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(inner[start..].trim());
    out
}

/// Membership of an integer matrix; `NotUnimodular` unless `det = ±1`.
pub fn membership(g: &CongruenceSubgroup, x: &Mat) -> Result<bool> {
    let m = from_mat(x)?;
    let d = det(&m);
    if d.abs() != 1 {
        return Err(Error::NotUnimodular(d.to_string()));
    }
    Ok(g.contains_entries(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: &str) -> CongruenceSubgroup {
        CongruenceSubgroup::named(n).unwrap()
    }

    #[test]
    fn gamma0_2_examples() {
        let g = named("Gamma0(2)");
        assert!(membership(&g, &to_mat(&T)).unwrap());
        assert!(!membership(&g, &to_mat(&[1, 0, 1, 1])).unwrap());
        assert!(membership(&named("Gamma(2)"), &to_mat(&[1, 2, 0, 1])).unwrap());
        for n in SUBGROUP_NAMES {
            let g = named(n);
            let ok = g.contains_identity();
            let coset_only = matches!(n, "Gamma0_2(3)" | "Gamma1_2(3)" | "Gamma2_1(3)" | "Gamma0_3(4)" | "Gamma0_3(2,4)" | "Gamma0_5(6)");
            assert_eq!(ok, !coset_only, "{n}");
        }
    }

    #[test]
    fn non_unimodular_rejected() {
        let g = named("Gamma0(2)");
        assert!(matches!(membership(&g, &to_mat(&[2, 0, 0, 1])), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn positive_part_excludes_reflections() {
        let g = named("Gamma0(2)+");
        assert!(g.positive_part());
        assert!(!g.contains_entries([1, 0, 0, -1]));
        assert!(named("Gamma0(2)").contains_entries([1, 0, 0, -1]));
        assert!(named("SL(2,Z)").positive_part());
    }

    #[test]
    fn generated_group_is_upper_zero_mod_six() {
        let g = named("<Gamma0_1(6),Gamma0_5(6)>");
        let h = named("Gamma0(6)");
        for a in -7..=7 {
            for b in -7..=7 {
                for c in -7..=7 {
                    for d in -7..=7 {
                        let x = [a, b, c, d];
                        if det(&x).abs() == 1 {
                            assert_eq!(g.contains_entries(x), h.contains_entries(x), "{x:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gamma2y_contains_swap() {
        let g = named("Gamma(2)Y");
        assert!(g.contains_entries(Y));
        assert!(g.contains_entries(S));
        assert!(!g.contains_entries(T));
    }

    #[test]
    fn compact_names() {
        assert_eq!(named("Gamma2+").name(), "Gamma(2)+");
        assert_eq!(named("gamma0(2)").name(), "Gamma0(2)");
        assert_eq!(named("Gamma0_1(6)").name(), "Gamma0_1(6)");
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(CongruenceSubgroup::named("Gamma7"), Err(Error::UnknownName(_))));
    }
}
