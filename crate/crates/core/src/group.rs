//! The standard p2 group `Γ = {a^p b^q c^r}`, the digit set, and conjugation by
//! the expanding map `g`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;

/// The isometry `a^p b^q c^r : (x, y) ↦ ((-1)^r x + p, (-1)^r y + q)`.
///
/// `a` and `b` are the unit translations and `c` is the π-rotation about the
/// origin. Ordered lexicographically on `(r, p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct P2Element {
    pub p: i64,
    pub q: i64,
    rotation: bool,
}

impl P2Element {
    pub const IDENTITY: P2Element = P2Element::translation(0, 0);
    pub const A: P2Element = P2Element::translation(1, 0);
    pub const B: P2Element = P2Element::translation(0, 1);
    pub const C: P2Element = P2Element::rotation(0, 0);

    pub const fn new(p: i64, q: i64, r: u8) -> Self {
        P2Element { p, q, rotation: r & 1 == 1 }
    }

    pub const fn translation(p: i64, q: i64) -> Self {
        P2Element { p, q, rotation: false }
    }

    /// `a^p b^q c`, the π-rotation about `(p/2, q/2)`.
    pub const fn rotation(p: i64, q: i64) -> Self {
        P2Element { p, q, rotation: true }
    }

    /// `a^k`.
    pub const fn a_pow(k: i64) -> Self {
        P2Element::translation(k, 0)
    }

    pub const fn r(&self) -> u8 {
        self.rotation as u8
    }

    pub const fn is_rotation(&self) -> bool {
        self.rotation
    }

    pub const fn is_identity(&self) -> bool {
        self.p == 0 && self.q == 0 && !self.rotation
    }

    /// `±1`, the scalar linear part.
    pub const fn sign(&self) -> i64 {
        if self.rotation {
            -1
        } else {
            1
        }
    }

    /// `self ∘ other`.
    pub const fn compose(&self, other: &P2Element) -> P2Element {
        let s = self.sign();
        P2Element {
            p: self.p + s * other.p,
            q: self.q + s * other.q,
            rotation: self.rotation ^ other.rotation,
        }
    }

    pub const fn inverse(&self) -> P2Element {
        if self.rotation {
            *self
        } else {
            P2Element::translation(-self.p, -self.q)
        }
    }

    /// Image of an integer point.
    pub const fn act(&self, x: i64, y: i64) -> (i64, i64) {
        let s = self.sign();
        (s * x + self.p, s * y + self.q)
    }

    /// `g γ g⁻¹` in closed form. Always lands back in `Γ`.
    pub fn conjugate_by_g(&self, params: &TileParams) -> P2Element {
        let (a, b) = (params.a(), params.b());
        let (p, q) = (self.p, self.q);
        if self.rotation {
            P2Element::rotation((1 - q) * b - 1, p - q * a)
        } else {
            P2Element::translation(-q * b, p - q * a)
        }
    }

    /// Whether `γ ∈ g Γ g⁻¹`, i.e. `g⁻¹ γ g` has an integral translation part.
    ///
    /// `g⁻¹ γ g` is `x ↦ x + M⁻¹(p, q)` for `r = 0` and
    /// `x ↦ -x + M⁻¹((p, q) - (B - 1, 0))` for `r = 1`; with
    /// `M⁻¹ = adj(M) / B` this is a divisibility test.
    pub fn is_in_conjugated_subgroup(&self, params: &TileParams) -> bool {
        let (a, b) = (params.a(), params.b());
        let (u, v) = if self.rotation {
            (self.p - (b - 1), self.q)
        } else {
            (self.p, self.q)
        };
        // adj(M) = [[-A, B], [-1, 0]]
        let x = -a * u + b * v;
        let y = -u;
        x % b == 0 && y % b == 0
    }
}

impl Ord for P2Element {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rotation, self.p, self.q).cmp(&(other.rotation, other.p, other.q))
    }
}

impl PartialOrd for P2Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical text: factors `a^p b^q c` separated by spaces, exponent 1 and
/// zero-exponent factors omitted, `id` for the identity.
impl fmt::Display for P2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut first = true;
        let mut factor = |f: &mut fmt::Formatter<'_>, name: &str, exp: i64| -> fmt::Result {
            if exp == 0 {
                return Ok(());
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(name)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            Ok(())
        };
        factor(f, "a", self.p)?;
        factor(f, "b", self.q)?;
        factor(f, "c", self.r() as i64)
    }
}

/// Accepts the canonical form and the compact one (`a^-2bc`, `a^{A}` braces
/// are not supported). Factors must appear in the order `a`, `b`, `c`.
impl FromStr for P2Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact == "id" {
            return Ok(P2Element::IDENTITY);
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut exps = [0i64; 3];
        let mut last = None;
        while pos < bytes.len() {
            let slot = match bytes[pos] {
                b'a' => 0,
                b'b' => 1,
                b'c' => 2,
                _ => return Err(Error::Parse),
            };
            if last.is_some_and(|l| l >= slot) {
                return Err(Error::Parse);
            }
            last = Some(slot);
            pos += 1;
            let mut exp = 1i64;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = compact[start..pos].parse().map_err(|_| Error::Parse)?;
            }
            exps[slot] = exp;
        }
        if last.is_none() || !(0..=1).contains(&exps[2]) {
            return Err(Error::Parse);
        }
        Ok(P2Element::new(exps[0], exps[1], exps[2] as u8))
    }
}

/// A 2×2 integer matrix, row-major.
pub type IMat2 = [[i64; 2]; 2];

/// Change of basis from the canonical basis to `(v, M̃ v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub m_tilde: IMat2,
    pub v: [i64; 2],
    /// Columns `v` and `M̃ v`; the general tile is `T̃ = C T`.
    pub c: IMat2,
}

impl BasisChange {
    pub fn det(&self) -> i64 {
        self.c[0][0] * self.c[1][1] - self.c[0][1] * self.c[1][0]
    }
}

/// The parameter pair `(A, B)` with `B >= 2` and `|A| <= B`.
///
/// Characteristic polynomial of `M = [[0, -B], [1, -A]]` is `x² + A x + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileParams {
    a: i64,
    b: i64,
    basis: Option<BasisChange>,
}

impl TileParams {
    pub fn new(a: i64, b: i64) -> Result<Self, Error> {
        if b < 2 || a.abs() > b {
            return Err(Error::NotExpanding { a, b });
        }
        Ok(TileParams { a, b, basis: None })
    }

    /// Reduces the general data `(M̃, v)` to canonical parameters, recording
    /// the change of basis `C = [v | M̃ v]` with `C M C⁻¹ = M̃`.
    pub fn canonicalize(m_tilde: IMat2, v: [i64; 2]) -> Result<Self, Error> {
        let mv = [
            m_tilde[0][0] * v[0] + m_tilde[0][1] * v[1],
            m_tilde[1][0] * v[0] + m_tilde[1][1] * v[1],
        ];
        let c = [[v[0], mv[0]], [v[1], mv[1]]];
        let basis = BasisChange { m_tilde, v, c };
        if basis.det() == 0 {
            return Err(Error::DependentVectors);
        }
        let a = -(m_tilde[0][0] + m_tilde[1][1]);
        let b = m_tilde[0][0] * m_tilde[1][1] - m_tilde[0][1] * m_tilde[1][0];
        let mut params = TileParams::new(a, b)?;
        params.basis = Some(basis);
        Ok(params)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn basis(&self) -> Option<&BasisChange> {
        self.basis.as_ref()
    }

    pub fn matrix(&self) -> IMat2 {
        [[0, -self.b], [1, -self.a]]
    }

    /// Number of digits, equal to the index `[Γ : g Γ g⁻¹]`.
    pub fn digit_count(&self) -> usize {
        self.b as usize
    }

    pub fn digits(&self) -> DigitSet {
        DigitSet::canonical(self)
    }

    /// `2|A| < B + 3`, the range where the lattice tile is disk-like.
    pub fn in_small_regime(&self) -> bool {
        2 * self.a.abs() < self.b + 3
    }

    /// `A >= -1` and `2A < B + 3`, where the pseudo-neighbor machinery applies.
    pub fn in_pseudo_range(&self) -> bool {
        self.a >= -1 && 2 * self.a < self.b + 3
    }
}

/// The digit set `{id, a, …, a^{B-2}, c}` (just `{id, c}` for `B = 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSet {
    digits: Vec<P2Element>,
}

impl DigitSet {
    pub fn canonical(params: &TileParams) -> Self {
        let b = params.b();
        let mut digits: Vec<P2Element> = (0..b - 1).map(P2Element::a_pow).collect();
        digits.push(P2Element::C);
        DigitSet { digits }
    }

    /// Arbitrary digit list, for residue-system checks on alternatives.
    pub fn from_elements(digits: Vec<P2Element>) -> Self {
        DigitSet { digits }
    }

    pub fn as_slice(&self) -> &[P2Element] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, P2Element> {
        self.digits.iter()
    }

    pub fn position(&self, digit: &P2Element) -> Option<usize> {
        self.digits.iter().position(|d| d == digit)
    }

    /// Whether the digits form a complete set of right coset representatives
    /// of `g Γ g⁻¹`: exactly `B` of them, pairwise in distinct cosets.
    pub fn is_complete_residue_system(&self, params: &TileParams) -> bool {
        if self.digits.len() != params.digit_count() {
            return false;
        }
        for (i, d) in self.digits.iter().enumerate() {
            for e in &self.digits[i + 1..] {
                if e.compose(&d.inverse()).is_in_conjugated_subgroup(params) {
                    return false;
                }
            }
        }
        true
    }
}

impl<'a> IntoIterator for &'a DigitSet {
    type Item = &'a P2Element;
    type IntoIter = core::slice::Iter<'a, P2Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.digits.iter()
    }
}

/// Whether `d` is a complete set of coset representatives of `gΓg⁻¹` in `Γ`.
pub fn verify_complete_residue_system(d: &DigitSet, params: &TileParams) -> bool {
    d.is_complete_residue_system(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn el(p: i64, q: i64, r: u8) -> P2Element {
        P2Element::new(p, q, r)
    }

    #[test]
    fn compose_examples() {
        assert_eq!(el(1, 0, 0).compose(&el(0, 0, 1)), el(1, 0, 1));
        assert_eq!(el(0, 0, 1).compose(&el(1, 0, 0)), el(-1, 0, 1));
        assert_eq!(el(2, 1, 1).compose(&el(2, 1, 1)), P2Element::IDENTITY);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(el(3, -2, 0).inverse(), el(-3, 2, 0));
        assert_eq!(el(5, 7, 1).inverse(), el(5, 7, 1));
        assert_eq!(P2Element::IDENTITY.inverse(), P2Element::IDENTITY);
    }

    #[test]
    fn conjugation_examples() {
        let p35 = TileParams::new(3, 5).unwrap();
        assert_eq!(el(3, 1, 0).conjugate_by_g(&p35), el(-5, 0, 0));
        assert_eq!(P2Element::IDENTITY.conjugate_by_g(&p35), P2Element::IDENTITY);
        for (a, b) in [(0, 2), (1, 3), (-2, 5), (4, 4)] {
            let p = TileParams::new(a, b).unwrap();
            assert_eq!(P2Element::C.conjugate_by_g(&p), el(b - 1, 0, 1));
            if a > 0 {
                assert_eq!(el(-a, -1, 1).conjugate_by_g(&p), el(2 * b - 1, 0, 1));
            }
        }
    }

    #[test]
    fn conjugated_subgroup_membership() {
        for a in -2..=2 {
            let p = TileParams::new(a, 2).unwrap();
            assert!(P2Element::B.is_in_conjugated_subgroup(&p));
        }
        for (a, b) in [(0, 2), (1, 3), (-3, 7), (5, 5)] {
            let p = TileParams::new(a, b).unwrap();
            assert!(!P2Element::A.is_in_conjugated_subgroup(&p));
            assert!(P2Element::IDENTITY.is_in_conjugated_subgroup(&p));
        }
    }

    #[test]
    fn conjugates_lie_in_subgroup() {
        let p = TileParams::new(-3, 7).unwrap();
        for g in [el(1, 2, 0), el(-4, 1, 1), el(0, -3, 1)] {
            assert!(g.conjugate_by_g(&p).is_in_conjugated_subgroup(&p));
        }
    }

    #[test]
    fn residue_systems() {
        for b in 2..=40 {
            for a in -b..=b {
                let p = TileParams::new(a, b).unwrap();
                assert!(p.digits().is_complete_residue_system(&p), "({a}, {b})");
            }
        }
        let p = TileParams::new(1, 2).unwrap();
        let alt = DigitSet::from_elements(alloc::vec![P2Element::IDENTITY, P2Element::B]);
        assert!(!alt.is_complete_residue_system(&p));
        let p = TileParams::new(1, 3).unwrap();
        let dup = DigitSet::from_elements(alloc::vec![
            P2Element::IDENTITY,
            P2Element::IDENTITY,
            P2Element::C
        ]);
        assert!(!dup.is_complete_residue_system(&p));
    }

    #[test]
    fn canonicalize_examples() {
        let (a, b) = (2, 5);
        let p = TileParams::canonicalize([[0, -b], [1, -a]], [1, 0]).unwrap();
        assert_eq!((p.a(), p.b()), (a, b));
        assert_eq!(p.basis().unwrap().c, [[1, 0], [0, 1]]);

        let p = TileParams::canonicalize([[-a, -b], [1, 0]], [0, 1]).unwrap();
        assert_eq!((p.a(), p.b()), (a, b));
        let c = p.basis().unwrap().c;
        assert_eq!(c, [[0, -b], [1, 0]]);
        // C M = M̃ C
        let m = p.matrix();
        let mt = [[-a, -b], [1, 0]];
        let mul = |x: IMat2, y: IMat2| {
            let mut z = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        assert_eq!(mul(c, m), mul(mt, c));

        assert_eq!(
            TileParams::canonicalize([[1, 0], [0, 1]], [1, 0]),
            Err(Error::DependentVectors)
        );
        assert_eq!(
            TileParams::canonicalize([[0, -2], [1, -3]], [1, 0]),
            Err(Error::NotExpanding { a: 3, b: 2 })
        );
    }

    #[test]
    fn params_validation() {
        assert!(TileParams::new(5, 3).is_err());
        assert!(TileParams::new(0, 1).is_err());
        assert!(TileParams::new(-4, 4).is_ok());
    }

    #[test]
    fn digit_sets() {
        let p = TileParams::new(0, 2).unwrap();
        assert_eq!(p.digits().as_slice(), &[P2Element::IDENTITY, P2Element::C]);
        let p = TileParams::new(1, 5).unwrap();
        let d = p.digits();
        assert_eq!(d.len(), 5);
        assert_eq!(d.as_slice()[3], P2Element::a_pow(3));
        assert_eq!(d.as_slice()[4], P2Element::C);
    }

    #[test]
    fn text_form() {
        assert_eq!(P2Element::IDENTITY.to_string(), "id");
        assert_eq!(el(-1, 0, 0).to_string(), "a^-1");
        assert_eq!(el(2, 1, 1).to_string(), "a^2 b c");
        assert_eq!(el(0, -1, 1).to_string(), "b^-1 c");
        assert_eq!(P2Element::C.to_string(), "c");
        assert_eq!("a^-2bc".parse::<P2Element>().unwrap(), el(-2, 1, 1));
        assert_eq!("a^3 b^-1 c".parse::<P2Element>().unwrap(), el(3, -1, 1));
        assert!("ba".parse::<P2Element>().is_err());
        assert!("".parse::<P2Element>().is_err());
        assert!("c^2".parse::<P2Element>().is_err());
    }

    fn arb_el() -> impl Strategy<Value = P2Element> {
        (-50i64..50, -50i64..50, 0u8..2).prop_map(|(p, q, r)| P2Element::new(p, q, r))
    }

    fn arb_params() -> impl Strategy<Value = TileParams> {
        (2i64..=40)
            .prop_flat_map(|b| (-b..=b, Just(b)))
            .prop_map(|(a, b)| TileParams::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(x in arb_el(), y in arb_el(), z in arb_el()) {
            prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
            prop_assert_eq!(x.compose(&P2Element::IDENTITY), x);
            prop_assert_eq!(P2Element::IDENTITY.compose(&x), x);
            prop_assert_eq!(x.compose(&x.inverse()), P2Element::IDENTITY);
            prop_assert_eq!(x.inverse().compose(&x), P2Element::IDENTITY);
        }

        #[test]
        fn action_matches_composition(x in arb_el(), y in arb_el(), u in -20i64..20, v in -20i64..20) {
            let (s, t) = y.act(u, v);
            prop_assert_eq!(x.act(s, t), x.compose(&y).act(u, v));
        }

        #[test]
        fn conjugation_keeps_rotation_bit(x in arb_el(), p in arb_params()) {
            let h = x.conjugate_by_g(&p);
            prop_assert_eq!(h.r(), x.r());
            prop_assert!(h.is_in_conjugated_subgroup(&p));
        }

        #[test]
        fn conjugation_is_a_homomorphism(x in arb_el(), y in arb_el(), p in arb_params()) {
            prop_assert_eq!(
                x.compose(&y).conjugate_by_g(&p),
                x.conjugate_by_g(&p).compose(&y.conjugate_by_g(&p))
            );
        }

        #[test]
        fn text_round_trip(x in arb_el()) {
            prop_assert_eq!(x.to_string().parse::<P2Element>().unwrap(), x);
        }
    }
}
