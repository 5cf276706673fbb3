//! Exact rational affine geometry: the expanding map `g`, the IFS maps
//! `f_i = g⁻¹ ∘ δ_i`, fixed points, certified enclosures, and attractor points.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::group::{P2Element, TileParams};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVec2 {
    pub x: Rational,
    pub y: Rational,
}

impl QVec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        QVec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QVec2::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        QVec2::from_ints(0, 0)
    }

    pub fn abs(&self) -> QVec2 {
        QVec2::new(self.x.abs(), self.y.abs())
    }

    pub fn scale(&self, s: &Rational) -> QVec2 {
        QVec2::new(&self.x * s, &self.y * s)
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &QVec2) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &QVec2 {
    type Output = QVec2;
    fn add(self, rhs: &QVec2) -> QVec2 {
        QVec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QVec2 {
    type Output = QVec2;
    fn sub(self, rhs: &QVec2) -> QVec2 {
        QVec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &QVec2 {
    type Output = QVec2;
    fn neg(self) -> QVec2 {
        QVec2::new(-&self.x, -&self.y)
    }
}

/// Row-major 2×2 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat2 {
    pub m: [[Rational; 2]; 2],
}

impl QMat2 {
    pub fn new(m: [[Rational; 2]; 2]) -> Self {
        QMat2 { m }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        QMat2::new([[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]])
    }

    pub fn identity() -> Self {
        QMat2::from_ints([[1, 0], [0, 1]])
    }

    pub fn scalar(s: i64) -> Self {
        QMat2::from_ints([[s, 0], [0, s]])
    }

    pub fn det(&self) -> Rational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Option<QMat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.m;
        Some(QMat2::new([
            [&m[1][1] / &det, -&m[0][1] / &det],
            [-&m[1][0] / &det, &m[0][0] / &det],
        ]))
    }

    pub fn apply(&self, v: &QVec2) -> QVec2 {
        let m = &self.m;
        QVec2::new(
            &m[0][0] * &v.x + &m[0][1] * &v.y,
            &m[1][0] * &v.x + &m[1][1] * &v.y,
        )
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> QMat2 {
        let m = &self.m;
        QMat2::new([
            [m[0][0].abs(), m[0][1].abs()],
            [m[1][0].abs(), m[1][1].abs()],
        ])
    }

    /// Maximum absolute row sum.
    pub fn row_sum_norm(&self) -> Rational {
        let r0 = self.m[0][0].abs() + self.m[0][1].abs();
        let r1 = self.m[1][0].abs() + self.m[1][1].abs();
        if r0 > r1 {
            r0
        } else {
            r1
        }
    }

    pub fn column(&self, j: usize) -> QVec2 {
        QVec2::new(self.m[0][j].clone(), self.m[1][j].clone())
    }
}

impl Mul for &QMat2 {
    type Output = QMat2;
    fn mul(self, rhs: &QMat2) -> QMat2 {
        let (a, b) = (&self.m, &rhs.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        QMat2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl Add for &QMat2 {
    type Output = QMat2;
    fn add(self, rhs: &QMat2) -> QMat2 {
        let (a, b) = (&self.m, &rhs.m);
        QMat2::new([
            [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
            [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
        ])
    }
}

impl Sub for &QMat2 {
    type Output = QMat2;
    fn sub(self, rhs: &QMat2) -> QMat2 {
        let (a, b) = (&self.m, &rhs.m);
        QMat2::new([
            [&a[0][0] - &b[0][0], &a[0][1] - &b[0][1]],
            [&a[1][0] - &b[1][0], &a[1][1] - &b[1][1]],
        ])
    }
}

/// `x ↦ L x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAffineMap {
    pub linear: QMat2,
    pub translation: QVec2,
}

impl RationalAffineMap {
    pub fn new(linear: QMat2, translation: QVec2) -> Self {
        RationalAffineMap { linear, translation }
    }

    pub fn identity() -> Self {
        RationalAffineMap::new(QMat2::identity(), QVec2::zero())
    }

    pub fn from_isometry(g: &P2Element) -> Self {
        RationalAffineMap::new(QMat2::scalar(g.sign()), QVec2::from_ints(g.p, g.q))
    }

    /// `g(x) = M x + ((B - 1)/2, 0)`.
    pub fn expanding(params: &TileParams) -> Self {
        let t = QVec2::new(rat(params.b() - 1, 2), int(0));
        RationalAffineMap::new(QMat2::from_ints(params.matrix()), t)
    }

    pub fn apply(&self, v: &QVec2) -> QVec2 {
        &self.linear.apply(v) + &self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalAffineMap) -> RationalAffineMap {
        RationalAffineMap::new(
            &self.linear * &other.linear,
            self.apply(&other.translation),
        )
    }

    pub fn inverse(&self) -> Result<RationalAffineMap, Error> {
        let inv = self.linear.inverse().ok_or(Error::SingularMap)?;
        let t = -&inv.apply(&self.translation);
        Ok(RationalAffineMap::new(inv, t))
    }

    /// The unique `x` with `f(x) = x`.
    pub fn fixed_point(&self) -> Result<QVec2, Error> {
        let i_minus_l = &QMat2::identity() - &self.linear;
        let inv = i_minus_l.inverse().ok_or(Error::SingularMap)?;
        Ok(inv.apply(&self.translation))
    }

    /// The map as a p2 element, when it is one.
    pub fn to_isometry(&self) -> Option<P2Element> {
        let one = Rational::one();
        let m = &self.linear.m;
        if !m[0][1].is_zero() || !m[1][0].is_zero() || m[0][0] != m[1][1] {
            return None;
        }
        let r = if m[0][0] == one {
            0
        } else if m[0][0] == -one {
            1
        } else {
            return None;
        };
        let t = &self.translation;
        if !t.x.is_integer() || !t.y.is_integer() {
            return None;
        }
        Some(P2Element::new(
            t.x.to_integer().to_i64()?,
            t.y.to_integer().to_i64()?,
            r,
        ))
    }
}

/// `M⁻¹` as an exact matrix.
pub fn inverse_matrix(params: &TileParams) -> QMat2 {
    QMat2::from_ints(params.matrix())
        .inverse()
        .expect("det M = B >= 2")
}

/// `[f_1, …, f_B]` with `f_i = g⁻¹ ∘ δ_i` over the digits in order.
pub fn ifs_maps(params: &TileParams) -> Vec<RationalAffineMap> {
    let g_inv = RationalAffineMap::expanding(params)
        .inverse()
        .expect("g is invertible");
    params
        .digits()
        .iter()
        .map(|d| g_inv.compose(&RationalAffineMap::from_isometry(d)))
        .collect()
}

/// Closed form of `Fix(f_i)` (1-based): `(M - I)⁻¹ (i - 1 - (B-1)/2, 0)` for
/// `i < B` and `-(M + I)⁻¹ ((B-1)/2, 0)` for `i = B`.
pub fn ifs_fixed_point_closed_form(params: &TileParams, i: usize) -> QVec2 {
    let b = params.b();
    assert!(i >= 1 && i as i64 <= b, "digit index {i} out of 1..={b}");
    let m = QMat2::from_ints(params.matrix());
    if (i as i64) < b {
        let shifted = &m - &QMat2::identity();
        // det(M - I) = 1 + A + B > 0
        let v = QVec2::new(int(i as i64 - 1) - rat(b - 1, 2), int(0));
        shifted.inverse().expect("1 + A + B > 0").apply(&v)
    } else {
        let shifted = &m + &QMat2::identity();
        // det(M + I) = 1 - A + B > 0
        // -x = M x + t
        let v = QVec2::new(rat(1 - b, 2), int(0));
        shifted.inverse().expect("1 - A + B > 0").apply(&v)
    }
}

/// Axis-aligned rational box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl BoundingBox {
    pub fn new(xmin: Rational, xmax: Rational, ymin: Rational, ymax: Rational) -> Self {
        assert!(xmin <= xmax && ymin <= ymax, "inverted box");
        BoundingBox { xmin, xmax, ymin, ymax }
    }

    /// `[-h.x, h.x] × [-h.y, h.y]`.
    pub fn symmetric(h: &QVec2) -> Self {
        BoundingBox::new(-&h.x, h.x.clone(), -&h.y, h.y.clone())
    }

    pub fn hull<'a, I: IntoIterator<Item = &'a QVec2>>(points: I) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bx = BoundingBox::new(
            first.x.clone(),
            first.x.clone(),
            first.y.clone(),
            first.y.clone(),
        );
        for p in it {
            if p.x < bx.xmin {
                bx.xmin = p.x.clone();
            }
            if p.x > bx.xmax {
                bx.xmax = p.x.clone();
            }
            if p.y < bx.ymin {
                bx.ymin = p.y.clone();
            }
            if p.y > bx.ymax {
                bx.ymax = p.y.clone();
            }
        }
        Some(bx)
    }

    pub fn width(&self) -> Rational {
        &self.xmax - &self.xmin
    }

    pub fn height(&self) -> Rational {
        &self.ymax - &self.ymin
    }

    pub fn center(&self) -> QVec2 {
        let half = rat(1, 2);
        QVec2::new(
            (&self.xmin + &self.xmax) * &half,
            (&self.ymin + &self.ymax) * &half,
        )
    }

    pub fn half_widths(&self) -> QVec2 {
        let half = rat(1, 2);
        QVec2::new(self.width() * &half, self.height() * &half)
    }

    pub fn corners(&self) -> [QVec2; 4] {
        [
            QVec2::new(self.xmin.clone(), self.ymin.clone()),
            QVec2::new(self.xmax.clone(), self.ymin.clone()),
            QVec2::new(self.xmin.clone(), self.ymax.clone()),
            QVec2::new(self.xmax.clone(), self.ymax.clone()),
        ]
    }

    pub fn contains(&self, p: &QVec2) -> bool {
        self.xmin <= p.x && p.x <= self.xmax && self.ymin <= p.y && p.y <= self.ymax
    }

    pub fn contains_box(&self, other: &BoundingBox) -> bool {
        self.xmin <= other.xmin
            && other.xmax <= self.xmax
            && self.ymin <= other.ymin
            && other.ymax <= self.ymax
    }

    /// Smallest box containing `f(self)`.
    pub fn image_hull(&self, f: &RationalAffineMap) -> BoundingBox {
        let pts: Vec<QVec2> = self.corners().iter().map(|c| f.apply(c)).collect();
        BoundingBox::hull(&pts).expect("four corners")
    }
}

/// Iteration cap of the enclosure search.
pub const ENCLOSURE_STEP_CAP: usize = 256;

/// Inflation applied to the series bound before certification.
pub fn enclosure_inflation() -> Rational {
    rat(5, 4)
}

/// Half-widths are rounded outward to this grid to keep denominators small.
const ENCLOSURE_GRID: i64 = 1024;

/// A box `X ⊇ T` centered at the origin.
///
/// Every point of `T` is `Σ_j ±M^{-j}(d_j - t)` with `d_j - t` on the segment
/// `[-(B-1)/2, (B-1)/2] × {0}`, so `T` lies in the zonotope
/// `Z = Σ_j M^{-j} [-e, e]`, `e = ((B-1)/2, 0)`, whose box hull has half-widths
/// `e · Σ_j |M^{-j} e₁|`. The series is summed exactly with a certified tail,
/// inflated by 1.25, rounded outward, and then certified: some `k <= 256`
/// satisfies `|M^{-k}| h + e Σ_{j<=k} |M^{-j} e₁| <= h`, i.e. every k-fold
/// composition `f_w` maps `X` into itself, so the attractor lies in `X`.
///
/// A box with `f_i(X) ⊆ X` for each single map exists only when
/// `|A| + 1 < B`; see [`is_one_step_invariant`].
pub fn bounding_box(params: &TileParams) -> Result<BoundingBox, Error> {
    let (bx, _) = certified_enclosure(params)?;
    Ok(bx)
}

/// [`bounding_box`] together with the certifying step count `k`.
pub fn certified_enclosure(params: &TileParams) -> Result<(BoundingBox, usize), Error> {
    let m_inv = inverse_matrix(params);
    let half_extent = rat(params.b() - 1, 2);

    // powers[j] = M^{-(j+1)}, sums[j] = Σ_{i<=j+1} |M^{-i} e₁|
    let mut powers = Vec::new();
    let mut sums = Vec::new();
    let mut pw = QMat2::identity();
    let mut acc = QVec2::zero();
    let half = rat(1, 2);
    let mut contract_at = None;
    for _ in 0..ENCLOSURE_STEP_CAP {
        pw = &m_inv * &pw;
        acc = &acc + &pw.column(0).abs();
        powers.push(pw.clone());
        sums.push(acc.clone());
        if contract_at.is_none() && pw.abs().row_sum_norm() <= half {
            contract_at = Some(powers.len());
            break;
        }
    }
    let k = contract_at.ok_or(Error::NoConvergence {
        steps: ENCLOSURE_STEP_CAP,
    })?;
    let nk = powers[k - 1].abs();
    // W = (I - |M^{-k}|)⁻¹ S_k bounds the whole series Σ_j |M^{-j} e₁|.
    let resolvent = (&QMat2::identity() - &nk)
        .inverse()
        .ok_or(Error::NoConvergence { steps: k })?;
    let whole = resolvent.apply(&sums[k - 1]);

    // Sharpen: exact partial sum to 2k terms plus |M^{-2k}| W for the tail.
    for _ in k..2 * k {
        pw = &m_inv * &pw;
        acc = &acc + &pw.column(0).abs();
        powers.push(pw.clone());
        sums.push(acc.clone());
    }
    let tail = pw.abs().apply(&whole);
    let series = &acc + &tail;

    let scale = enclosure_inflation() * &half_extent;
    let h = round_up(&series.scale(&scale));
    let bx = BoundingBox::symmetric(&h);

    // Certification against the k-fold compositions.
    let e_sums: Vec<QVec2> = sums.iter().map(|s| s.scale(&half_extent)).collect();
    let mut pw = QMat2::identity();
    let mut e_acc = QVec2::zero();
    for step in 1..=ENCLOSURE_STEP_CAP {
        pw = &m_inv * &pw;
        e_acc = match e_sums.get(step - 1) {
            Some(s) => s.clone(),
            None => &e_acc + &pw.column(0).abs().scale(&half_extent),
        };
        let lhs = &pw.abs().apply(&h) + &e_acc;
        if lhs.le(&h) {
            return Ok((bx, step));
        }
    }
    Err(Error::NoConvergence {
        steps: ENCLOSURE_STEP_CAP,
    })
}

fn round_up(v: &QVec2) -> QVec2 {
    let grid = int(ENCLOSURE_GRID);
    let up = |r: &Rational| (r * &grid).ceil() / &grid;
    QVec2::new(up(&v.x), up(&v.y))
}

/// Whether `f_i(X) ⊆ X` holds for every single IFS map.
pub fn is_one_step_invariant(params: &TileParams, bx: &BoundingBox) -> bool {
    ifs_maps(params)
        .iter()
        .all(|f| bx.contains_box(&bx.image_hull(f)))
}

/// A box with `f_i(X) ⊆ X` for every single map, when one exists
/// (`|A| + 1 < B`): the least solution `h*` of `|M⁻¹| h + e |M⁻¹ e₁| <= h`,
/// inflated and rounded like [`bounding_box`]. Larger than the certified
/// enclosure, so it is not used for candidate search.
pub fn one_step_box(params: &TileParams) -> Option<BoundingBox> {
    if params.a().abs() + 1 >= params.b() {
        return None;
    }
    let n = inverse_matrix(params).abs();
    let e = rat(params.b() - 1, 2);
    let rhs = n.column(0).scale(&e);
    let h_star = (&QMat2::identity() - &n).inverse()?.apply(&rhs);
    let bx = BoundingBox::symmetric(&round_up(&h_star.scale(&enclosure_inflation())));
    is_one_step_invariant(params, &bx).then_some(bx)
}

/// Point-count limits for attractor enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Bound on `depth · B^depth`.
    pub max_work: u128,
    pub max_depth: usize,
}

impl Budget {
    pub const DEFAULT_WORK: u128 = 1 << 26;
    pub const DEFAULT_DEPTH: usize = 20;

    pub fn with_work(max_work: u128) -> Self {
        Budget {
            max_work,
            ..Budget::default()
        }
    }

    pub fn check(&self, branching: usize, depth: usize) -> Result<(), Error> {
        let requested = (depth.max(1) as u128).saturating_mul(
            (branching as u128)
                .checked_pow(depth as u32)
                .unwrap_or(u128::MAX),
        );
        if depth > self.max_depth || requested > self.max_work {
            return Err(Error::BudgetExceeded {
                requested,
                budget: self.max_work,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_work: Budget::DEFAULT_WORK,
            max_depth: Budget::DEFAULT_DEPTH,
        }
    }
}

/// The seed of every address point, `Fix(f_1)`.
pub fn seed_point(params: &TileParams) -> QVec2 {
    ifs_fixed_point_closed_form(params, 1)
}

/// The `B^depth` points `f_{δ_1} ∘ … ∘ f_{δ_depth}(seed)` in lexicographic
/// address order, stored as integer numerators over one shared denominator.
#[derive(Clone, Debug)]
pub struct AttractorCloud {
    branching: usize,
    depth: usize,
    denominator: BigInt,
    numerators: Vec<[BigInt; 2]>,
}

/// Integer form of `f_δ`: with `x = N / D` (`D` even),
/// `f_δ(x) = adj(M)(σN + D(d - t)) / (B D)`.
struct ScaledStep {
    adj: [[BigInt; 2]; 2],
    digits: Vec<(i64, BigInt, BigInt)>,
}

impl ScaledStep {
    fn new(params: &TileParams) -> Self {
        let (a, b) = (params.a(), params.b());
        let digits = params
            .digits()
            .iter()
            .map(|d| (d.sign(), BigInt::from(d.p), BigInt::from(d.q)))
            .collect();
        ScaledStep {
            adj: [
                [BigInt::from(-a), BigInt::from(b)],
                [BigInt::from(-1), BigInt::zero()],
            ],
            digits,
        }
    }

    /// Numerator of `f_digit(N / D)` over `B D`; `shift = D (B-1)/2`.
    fn apply(&self, digit: usize, n: &[BigInt; 2], den: &BigInt, shift: &BigInt) -> [BigInt; 2] {
        let (s, p, q) = &self.digits[digit];
        let (ux, uy) = if *s < 0 { (-&n[0], -&n[1]) } else { (n[0].clone(), n[1].clone()) };
        let ux = ux + den * p - shift;
        let uy = uy + den * q;
        [
            &self.adj[0][0] * &ux + &self.adj[0][1] * &uy,
            &self.adj[1][0] * &ux,
        ]
    }
}

impl AttractorCloud {
    pub fn generate(params: &TileParams, depth: usize, budget: &Budget) -> Result<Self, Error> {
        let branching = params.digit_count();
        budget.check(branching, depth)?;
        let step = ScaledStep::new(params);
        let b = BigInt::from(params.b());
        let seed = seed_point(params);
        let base = seed.x.denom().lcm(seed.y.denom()) * BigInt::from(2);
        let mut den = base.clone();
        let mut numerators = vec![[
            seed.x.numer() * (&base / seed.x.denom()),
            seed.y.numer() * (&base / seed.y.denom()),
        ]];
        let half = BigInt::from(params.b() - 1);
        for _ in 0..depth {
            let shift = &den / BigInt::from(2) * &half;
            let mut next = Vec::with_capacity(numerators.len() * branching);
            for digit in 0..branching {
                for n in &numerators {
                    next.push(step.apply(digit, n, &den, &shift));
                }
            }
            numerators = next;
            den *= &b;
        }
        Ok(AttractorCloud {
            branching,
            depth,
            denominator: den,
            numerators,
        })
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Index (into the digit list) of the first address digit of point `i`.
    pub fn first_digit(&self, i: usize) -> usize {
        if self.depth == 0 {
            return 0;
        }
        i / self.branching.pow(self.depth as u32 - 1)
    }

    pub fn point(&self, i: usize) -> QVec2 {
        let [x, y] = &self.numerators[i];
        QVec2::new(
            Rational::new(x.clone(), self.denominator.clone()),
            Rational::new(y.clone(), self.denominator.clone()),
        )
    }

    pub fn points(&self) -> Vec<QVec2> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Floating-point view, for rasterization and numeric oracles only.
    pub fn points_f64(&self) -> Vec<(f64, f64)> {
        let den = big_to_f64(&self.denominator);
        self.numerators
            .iter()
            .map(|[x, y]| (big_to_f64(x) / den, big_to_f64(y) / den))
            .collect()
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

/// Integer arithmetic used by the address-tree walk.
trait ScaledInt: Clone {
    fn from_big(n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn as_f64(&self) -> f64;
}

impl ScaledInt for i128 {
    fn from_big(n: &BigInt) -> Self {
        n.to_i128().expect("bounded by the overflow check")
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl ScaledInt for BigInt {
    fn from_big(n: &BigInt) -> Self {
        n.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_f64(&self) -> f64 {
        big_to_f64(self)
    }
}

struct TreeWalk<'a, T, F> {
    /// `steps[j][i]`: numerator of `M^{-(j+1)}(d_i - t)` over the leaf denominator
    steps: Vec<Vec<[T; 2]>>,
    signs: Vec<bool>,
    /// numerator of `M^{-depth} seed`
    tail: [T; 2],
    leaf_den: f64,
    visit: &'a mut F,
}

impl<T: ScaledInt, F: FnMut(usize, f64, f64)> TreeWalk<'_, T, F> {
    /// `t` and `flip` describe `f_{δ_1} ∘ … ∘ f_{δ_level} = ±M^{-level} x + t`.
    fn descend(&mut self, level: usize, first: usize, t: &[T; 2], flip: bool) {
        if level == self.steps.len() {
            let (qx, qy) = if flip {
                (self.tail[0].neg(), self.tail[1].neg())
            } else {
                (self.tail[0].clone(), self.tail[1].clone())
            };
            let x = t[0].add(&qx).as_f64() / self.leaf_den;
            let y = t[1].add(&qy).as_f64() / self.leaf_den;
            (self.visit)(first, x, y);
            return;
        }
        for i in 0..self.signs.len() {
            let v = &self.steps[level][i];
            let child = if flip {
                [t[0].sub(&v[0]), t[1].sub(&v[1])]
            } else {
                [t[0].add(&v[0]), t[1].add(&v[1])]
            };
            let first = if level == 0 { i } else { first };
            self.descend(level + 1, first, &child, flip ^ self.signs[i]);
        }
    }
}

/// Streams the `B^depth` address points `f_{δ_1} ∘ … ∘ f_{δ_depth}(seed)` in
/// lexicographic address order as `(index of δ_1, x, y)`. Coordinates are
/// exact integers over one denominator until the final division.
pub fn visit_points_f64<F: FnMut(usize, f64, f64)>(
    params: &TileParams,
    depth: usize,
    budget: &Budget,
    mut visit: F,
) -> Result<(), Error> {
    budget.check(params.digit_count(), depth)?;
    let b = params.b();
    let seed = seed_point(params);
    let b_big = BigInt::from(b);
    let leaf = seed.x.denom().lcm(seed.y.denom()) * BigInt::from(2) * num_traits::pow(b_big.clone(), depth);
    let adj = QMat2::from_ints([[-params.a(), b], [-1, 0]]);
    let digits = params.digits();
    let offsets: Vec<QVec2> = digits
        .iter()
        .map(|d| QVec2::new(int(d.p) - rat(b - 1, 2), int(0)))
        .collect();
    let leaf_q = Rational::from_integer(leaf.clone());
    let to_num = |v: &QVec2| -> [BigInt; 2] {
        let x = &v.x * &leaf_q;
        let y = &v.y * &leaf_q;
        debug_assert!(x.is_integer() && y.is_integer());
        [x.to_integer(), y.to_integer()]
    };
    let mut steps_big = Vec::with_capacity(depth);
    // power = M^{-(j+1)} as adj^{j+1} / B^{j+1}
    let mut power = QMat2::identity();
    let inv_b = rat(1, b);
    for _ in 0..depth {
        power = &(&adj * &power) * &QMat2::new([[inv_b.clone(), int(0)], [int(0), inv_b.clone()]]);
        steps_big.push(offsets.iter().map(|o| to_num(&power.apply(o))).collect::<Vec<_>>());
    }
    let tail_big = to_num(&power.apply(&seed));
    let signs: Vec<bool> = digits.iter().map(|d| d.is_rotation()).collect();
    let leaf_den = big_to_f64(&leaf);
    let h = bounding_box(params)?.half_widths();
    let reach = (if h.x > h.y { h.x.clone() } else { h.y.clone() }).ceil().to_integer() + BigInt::from(2);
    let worst = &leaf * reach * BigInt::from(4);
    let zero = [BigInt::zero(), BigInt::zero()];
    if worst.bits() < 120 {
        let small = |v: &[BigInt; 2]| [i128::from_big(&v[0]), i128::from_big(&v[1])];
        let mut walk = TreeWalk {
            steps: steps_big.iter().map(|row| row.iter().map(small).collect()).collect(),
            signs,
            tail: small(&tail_big),
            leaf_den,
            visit: &mut visit,
        };
        walk.descend(0, 0, &[0, 0], false);
    } else {
        let mut walk = TreeWalk {
            steps: steps_big,
            signs,
            tail: tail_big,
            leaf_den,
            visit: &mut visit,
        };
        walk.descend(0, 0, &zero, false);
    }
    Ok(())
}

/// All `B^depth` address points of depth `depth`, exact.
pub fn attractor_points(
    params: &TileParams,
    depth: usize,
    budget: &Budget,
) -> Result<Vec<QVec2>, Error> {
    Ok(AttractorCloud::generate(params, depth, budget)?.points())
}
