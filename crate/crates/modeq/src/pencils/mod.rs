//! Level curves of the invariants `R̃`, `I_n` and `M̃` as pencils of conics.
//!
//! Each family is a ratio `num/den` of polynomials that are quadratic in
//! suitable coordinates; the level-`t` curve is `num - t·den = 0` and the
//! level `∞` curve is `den = 0`. The four common zeroes of `num` and `den`
//! are the base points.

mod double;
mod sample;

pub use double::{delta0_double_class, DoubleClass};
pub use sample::{sample_level_curve, to_csv, to_svg, CurvePoint, ExactPoint, LevelCurve, QuadSurd, Window};

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{aux_combination, b_sym, AuxKind};
use crate::scalars::{fmt_rational, int, parity_split, parse_rational, rat, GDPoly, QSqrt3, Rational};

/// Coordinates a conic is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Coords {
    /// `(γ, δ)`.
    GammaDelta,
    /// `(γ̃₅, δ)` with `γ̃₅ = γ - 2N₅δ`.
    Gamma5Delta,
    /// `(γ̃₆, δ)` with `γ̃₆ = γ - (5/2)N₆δ`.
    Gamma6Delta,
}

impl Coords {
    pub fn x_name(self) -> &'static str {
        match self {
            Coords::GammaDelta => "gamma",
            Coords::Gamma5Delta => "gamma5",
            Coords::Gamma6Delta => "gamma6",
        }
    }
}

/// `A x² + B xy + C y² + D x + E y + F = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Conic {
    /// `[A, B, C, D, E, F]`.
    pub coeffs: [QSqrt3; 6],
    pub coords: Coords,
}

impl Conic {
    pub fn new(coeffs: [QSqrt3; 6], coords: Coords) -> Result<Self> {
        if coeffs[..5].iter().all(QSqrt3::is_zero) {
            return Err(Error::Domain("conic has no non-constant term".into()));
        }
        Ok(Conic { coeffs, coords })
    }

    /// Reads a polynomial of total degree ≤ 2 in `(x, y)`, with `x` in the
    /// first slot of a [`GDPoly`].
    fn from_poly(p: &GDPoly, coords: Coords) -> Result<Self> {
        if p.degree().unwrap_or(0) > 2 {
            return Err(Error::OracleInvariant(format!("level curve is not a conic: {p}")));
        }
        let c = |a, b| p.coeff(a, b);
        Conic::new([c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1), c(0, 0)], coords)
    }

    pub fn eval(&self, x: &QSqrt3, y: &QSqrt3) -> QSqrt3 {
        let [a, b, c, d, e, f] = &self.coeffs;
        a.clone() * x.clone() * x.clone()
            + b.clone() * x.clone() * y.clone()
            + c.clone() * y.clone() * y.clone()
            + d.clone() * x.clone()
            + e.clone() * y.clone()
            + f.clone()
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.eval(&x.clone().into(), &y.clone().into()).is_zero()
    }

    pub fn scale(&self, s: &QSqrt3) -> Self {
        let coeffs = self.coeffs.clone().map(|c| c * s.clone());
        Conic { coeffs, coords: self.coords }
    }

    /// All coefficients rational?
    pub fn rational_coeffs(&self) -> Option<[Rational; 6]> {
        let v: Option<Vec<Rational>> = self.coeffs.iter().map(QSqrt3::as_rational).collect();
        v.map(|v| v.try_into().expect("six entries"))
    }

    /// The determinant of the symmetric 3×3 matrix of the conic.
    pub fn determinant(&self) -> QSqrt3 {
        let h = QSqrt3::from_rational(rat(1, 2));
        let [a, b, c, d, e, f] = self.coeffs.clone();
        let (b, d, e) = (b * h.clone(), d * h.clone(), e * h);
        a.clone() * (c.clone() * f.clone() - e.clone() * e.clone()) - b.clone() * (b.clone() * f - e.clone() * d.clone())
            + d.clone() * (b * e - c * d)
    }

    /// `B² - 4AC`.
    pub fn discriminant(&self) -> QSqrt3 {
        let [a, b, c, ..] = self.coeffs.clone();
        b.clone() * b - QSqrt3::from_rational(int(4)) * a * c
    }
}

/// Real type of a conic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ConicClass {
    Ellipse,
    Hyperbola,
    Parabola,
    ParallelLines,
    CrossingLines,
    DoubleLine,
    /// A single real point.
    Point,
    /// No real points.
    Empty,
    /// Quadratic part vanishes: a single line.
    Line,
}

impl ConicClass {
    pub fn is_line_pair(self) -> bool {
        matches!(self, ConicClass::ParallelLines | ConicClass::CrossingLines | ConicClass::DoubleLine)
    }

    pub fn is_degenerate(self) -> bool {
        !matches!(self, ConicClass::Ellipse | ConicClass::Hyperbola | ConicClass::Parabola | ConicClass::Empty)
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact real classification from the discriminant, the determinant and,
/// for parallel pairs, the sum of the two cofactors.
pub fn classify_conic(c: &Conic) -> ConicClass {
    let [a, b, cc, d, e, f] = c.coeffs.clone();
    if a.is_zero() && b.is_zero() && cc.is_zero() {
        return ConicClass::Line;
    }
    let det = c.determinant().signum();
    let disc = c.discriminant().signum();
    if det != 0 {
        return match disc {
            -1 => {
                if (a.clone() * c.determinant()).signum() < 0 || (cc * c.determinant()).signum() < 0 {
                    ConicClass::Ellipse
                } else {
                    ConicClass::Empty
                }
            }
            0 => ConicClass::Parabola,
            _ => ConicClass::Hyperbola,
        };
    }
    match disc {
        -1 => ConicClass::Point,
        1 => ConicClass::CrossingLines,
        _ => {
            let q = QSqrt3::from_rational(rat(1, 4));
            let k = (cc * f.clone() - e.clone() * e * q.clone()) + (a * f - d.clone() * d * q);
            match k.signum() {
                -1 => ConicClass::ParallelLines,
                0 => ConicClass::DoubleLine,
                _ => ConicClass::Empty,
            }
        }
    }
}

/// A pencil parameter value, possibly infinite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Level {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(t) => f.write_str(&fmt_rational(t)),
            Level::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Level::Infinity),
            t => parse_rational(t).map(Level::Finite),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<Rational> for Level {
    fn from(t: Rational) -> Self {
        Level::Finite(t)
    }
}

/// The three pencils.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PencilFamily {
    /// Level curves of `R̃` in `(γ, δ)`.
    Rtilde,
    /// Level curves of `I_n` in `(γ̃₅, δ)`, indexed by `N₅`.
    Ipencil(Rational),
    /// Level curves of `M̃` in `(γ̃₆, δ)`, indexed by `N₆`.
    Mpencil(Rational),
}

impl PencilFamily {
    /// Checks the parameter restrictions.
    pub fn validated(self) -> Result<Self> {
        match &self {
            PencilFamily::Ipencil(n) => {
                let sq = n * n;
                if sq == int(1) || sq == rat(9, 4) {
                    return Err(Error::Domain(format!("I pencil undefined at N5 = {}", fmt_rational(n))));
                }
            }
            PencilFamily::Mpencil(n) => {
                if n.is_zero() {
                    return Err(Error::Domain("M pencil undefined at N6 = 0".into()));
                }
            }
            PencilFamily::Rtilde => {}
        }
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        match self {
            PencilFamily::Rtilde => "Rtilde",
            PencilFamily::Ipencil(_) => "I",
            PencilFamily::Mpencil(_) => "Mtilde",
        }
    }

    /// Label used in CSV and SVG output, e.g. `I(N5=1/3)`.
    pub fn label(&self) -> String {
        match self {
            PencilFamily::Rtilde => "Rtilde".into(),
            PencilFamily::Ipencil(n) => format!("I(N5={})", fmt_rational(n)),
            PencilFamily::Mpencil(n) => format!("Mtilde(N6={})", fmt_rational(n)),
        }
    }

    pub fn coords(&self) -> Coords {
        match self {
            PencilFamily::Rtilde => Coords::GammaDelta,
            PencilFamily::Ipencil(_) => Coords::Gamma5Delta,
            PencilFamily::Mpencil(_) => Coords::Gamma6Delta,
        }
    }

    /// `γ = x + shift·δ` in the family's coordinates.
    pub fn shift(&self) -> Rational {
        match self {
            PencilFamily::Rtilde => int(0),
            PencilFamily::Ipencil(n) => int(2) * n,
            PencilFamily::Mpencil(n) => rat(5, 2) * n,
        }
    }

    /// Numerator and denominator as polynomials in `(x, δ)`.
    pub fn num_den(&self) -> Result<(GDPoly, GDPoly)> {
        let q = |r: Rational| QSqrt3::from_rational(r);
        match self.clone().validated()? {
            PencilFamily::Rtilde => {
                let x = GDPoly::g();
                let d = GDPoly::d();
                let num = &(&x * &x) - &x.scale(&q(int(3)));
                let den = &(&x + &GDPoly::constant(q(int(1)))) - &(&d * &d);
                Ok((num, den))
            }
            PencilFamily::Ipencil(big) => {
                let n = &big - rat(3, 2);
                let num = b_sym(&n, 4, 0);
                let den = b_sym(&n, 4, 2) * b_sym(&n, 2, 0);
                self.to_coords(num, den)
            }
            PencilFamily::Mpencil(big) => {
                let n = &big - int(2);
                let num = b_sym(&n, 5, 2) * b_sym(&n, 2, 0);
                let den = aux_combination(AuxKind::B5320, &n)?;
                self.to_coords(num, den)
            }
        }
    }

    fn to_coords(&self, num: GDPoly, den: GDPoly) -> Result<(GDPoly, GDPoly)> {
        let x = &GDPoly::g() + &GDPoly::d().scale(&QSqrt3::from_rational(self.shift()));
        let conv = |p: GDPoly| -> Result<GDPoly> {
            Ok(gamma_form(&p)?.compose(&x, &GDPoly::d()))
        };
        Ok((conv(num)?, conv(den)?))
    }
}

/// Rewrites a polynomial in `(g, δ)` of pure parity in `g` as a
/// polynomial in `(γ, δ)`, dividing out one `g` from odd polynomials.
pub fn gamma_form(p: &GDPoly) -> Result<GDPoly> {
    let (even, odd) = parity_split(p);
    let base = match (even.is_zero(), odd.is_zero()) {
        (_, true) => even,
        (true, false) => odd.div_g().expect("odd part has a factor g"),
        (false, false) => return Err(Error::Domain("polynomial has mixed parity in g".into())),
    };
    base.even_to_gamma().ok_or_else(|| Error::Domain("parity split failed".into()))
}

/// The level-`t` curve `num - t·den = 0`; `t = ∞` gives `den = 0`.
pub fn conic_at_level(family: &PencilFamily, level: &Level) -> Result<Conic> {
    let (num, den) = family.num_den()?;
    let poly = match level {
        Level::Finite(t) => &num - &den.scale(&QSqrt3::from_rational(t.clone())),
        Level::Infinity => den,
    };
    Conic::from_poly(&poly, family.coords())
}

/// The four base points in the family's coordinates (with multiplicity).
pub fn base_points(family: &PencilFamily) -> Result<Vec<(Rational, Rational)>> {
    let h = rat(1, 2);
    Ok(match family.clone().validated()? {
        PencilFamily::Rtilde => vec![(int(0), int(1)), (int(0), int(-1)), (int(3), int(2)), (int(3), int(-2))],
        PencilFamily::Ipencil(n) => {
            let sq = &n * &n;
            let mut v = Vec::new();
            for s in [1i64, -1] {
                let s = int(s);
                v.push((&sq + &s * int(4) * &n + rat(27, 4), &n + &s * rat(5, 2)));
            }
            for s in [1i64, -1] {
                let s = int(s);
                v.push((&sq + &s * rat(4, 5) * &n + rat(3, 4), rat(-3, 5) * &n - &s * &h));
            }
            v
        }
        PencilFamily::Mpencil(n) => {
            let sq = &n * &n;
            let mut v = vec![(int(3), int(0)), (int(3) * (&sq + int(2)) / int(2), -n.clone())];
            for s in [1i64, -1] {
                let s = int(s);
                v.push((&sq / int(2) + &s * rat(9, 2) * &n + int(12), &n + &s * int(3)));
            }
            v
        }
    })
}

/// The line through two base points.
#[derive(Clone, Debug, Serialize)]
pub struct Chord {
    pub from: usize,
    pub to: usize,
    /// `dδ/dx`; `None` for vertical chords or coincident endpoints.
    #[serde(serialize_with = "ser_opt_rational")]
    pub slope: Option<Rational>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

/// Shape of the base quadrilateral.
#[derive(Clone, Debug, Serialize)]
pub struct Quadrilateral {
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<(Rational, Rational)>,
    pub chords: Vec<Chord>,
    /// Four vertices on one circle (or line), by the 4×4 determinant test.
    pub cyclic: bool,
    /// Two of the chords are parallel and disjoint.
    pub trapezoid: bool,
    /// Vertices that occur twice.
    #[serde(serialize_with = "ser_points")]
    pub double_vertices: Vec<(Rational, Rational)>,
}

fn ser_points<S: serde::Serializer>(v: &[(Rational, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (x, y) in v {
        seq.serialize_element(&[fmt_rational(x), fmt_rational(y)])?;
    }
    seq.end()
}

/// Slopes of the six chords between base points and the cyclicity test.
pub fn slopes_and_cyclicity(family: &PencilFamily) -> Result<Quadrilateral> {
    let v = base_points(family)?;
    let mut chords = Vec::new();
    let mut double_vertices = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let dx = &v[j].0 - &v[i].0;
            let dy = &v[j].1 - &v[i].1;
            if dx.is_zero() && dy.is_zero() && !double_vertices.contains(&v[i]) {
                double_vertices.push(v[i].clone());
            }
            let slope = if dx.is_zero() { None } else { Some(dy / dx) };
            chords.push(Chord { from: i, to: j, slope });
        }
    }
    // Opposite chords share no vertex.
    let mut trapezoid = false;
    if double_vertices.is_empty() {
        for a in &chords {
            for b in &chords {
                let disjoint = [a.from, a.to].iter().all(|x| *x != b.from && *x != b.to);
                if disjoint && (a.from, a.to) < (b.from, b.to) && a.slope == b.slope {
                    trapezoid = true;
                }
            }
        }
    }
    let cyclic = concyclic(&v);
    Ok(Quadrilateral { vertices: v, chords, cyclic, trapezoid, double_vertices })
}

/// `det[x²+y², x, y, 1] = 0`.
fn concyclic(v: &[(Rational, Rational)]) -> bool {
    let rows: Vec<[Rational; 4]> =
        v.iter().map(|(x, y)| [x * x + y * y, x.clone(), y.clone(), int(1)]).collect();
    det4(&rows).is_zero()
}

fn det4(m: &[[Rational; 4]]) -> Rational {
    let mut acc = int(0);
    for c in 0..4 {
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|r| (0..4).filter(|&k| k != c).map(|k| r[k].clone()).collect()).collect();
        let d3 = &minor[0][0] * (&minor[1][1] * &minor[2][2] - &minor[1][2] * &minor[2][1])
            - &minor[0][1] * (&minor[1][0] * &minor[2][2] - &minor[1][2] * &minor[2][0])
            + &minor[0][2] * (&minor[1][0] * &minor[2][1] - &minor[1][1] * &minor[2][0]);
        let term = &m[0][c] * d3;
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Levels with closed-form degenerate or parabolic level curves.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalLevels {
    /// Line pairs.
    pub degenerate: Vec<Level>,
    /// Parabolas: the boundaries between elliptic and hyperbolic zones.
    pub parabolic: Vec<Level>,
}

/// The zone boundaries of a pencil, where they have a closed form.
pub fn critical_levels(family: &PencilFamily) -> Result<CriticalLevels> {
    Ok(match family.clone().validated()? {
        PencilFamily::Rtilde => CriticalLevels {
            degenerate: vec![Level::Finite(int(-9)), Level::Finite(int(-1)), Level::Finite(int(0))],
            parabolic: vec![Level::Infinity],
        },
        PencilFamily::Ipencil(n) => {
            let sq = &n * &n;
            let mut degenerate = vec![Level::Infinity, Level::Finite(rat(-4, 5) * (&sq - rat(9, 4)))];
            let den = int(16) * &sq - int(25);
            if !den.is_zero() {
                degenerate.push(Level::Finite(int(-9) * &sq / den));
            }
            let mut parabolic = vec![Level::Finite(int(1))];
            if sq != int(1) {
                parabolic.push(Level::Finite(sq));
            }
            CriticalLevels { degenerate, parabolic }
        }
        PencilFamily::Mpencil(_) => {
            CriticalLevels { degenerate: vec![Level::Finite(int(0))], parabolic: vec![Level::Infinity] }
        }
    })
}

/// Which side of `(I-1)(I-N₅²)` a level lies on: negative means ellipse.
pub fn ipencil_zone_sign(n5: &Rational, level: &Rational) -> i32 {
    let v = (level - int(1)) * (level - n5 * n5);
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}
