//! Exact sampling of level curves and their CSV/SVG rendering.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{fmt_rational, int, parse_rational, rat, Rational};

use super::{base_points, classify_conic, conic_at_level, ConicClass, Level, PencilFamily};

/// `a + b√s` with rational `a`, `b`, `s`. Arithmetic assumes equal radicands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub radicand: Rational,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (p, q) = (r.numer(), r.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    (&sp * &sp == *p && &sq * &sq == *q).then(|| Rational::new(sp, sq))
}

impl QuadSurd {
    pub fn rational(a: Rational) -> Self {
        QuadSurd { a, b: int(0), radicand: int(0) }
    }

    /// `a + b√s`, folding perfect squares into `a`.
    pub fn new(a: Rational, b: Rational, radicand: Rational) -> Self {
        if b.is_zero() || radicand.is_zero() {
            return QuadSurd::rational(a);
        }
        match rational_sqrt(&radicand) {
            Some(r) => QuadSurd::rational(a + b * r),
            None => QuadSurd { a, b, radicand },
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common(&self, other: &Self) -> Rational {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert_eq!(self.radicand, other.radicand, "surds with different radicands");
                self.radicand.clone()
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let s = self.common(o);
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b, s)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let s = self.common(o);
        QuadSurd::new(&self.a - &o.a, &self.b - &o.b, s)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let s = self.common(o);
        QuadSurd::new(&self.a * &o.a + &self.b * &o.b * &s, &self.a * &o.b + &self.b * &o.a, s)
    }

    /// Inverse via the conjugate; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.radicand;
        if norm.is_zero() {
            return None;
        }
        Some(QuadSurd::new(&self.a / &norm, -&self.b / &norm, self.radicand.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact comparison with a rational, for non-negative radicands.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let x = &self.a - r;
        if self.is_rational() {
            return x.cmp(&int(0));
        }
        let sx = x.cmp(&int(0));
        let sb = self.b.cmp(&int(0));
        if sx == Ordering::Equal || sx == sb {
            return sb;
        }
        // Opposite signs: compare x² with b²s.
        match (&x * &x).cmp(&(&self.b * &self.b * &self.radicand)) {
            Ordering::Greater => sx,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * f(&self.radicand).sqrt()
    }

    /// Fixed-precision decimal.
    pub fn to_decimal(&self, digits: usize) -> String {
        let v = self.to_f64();
        let s = format!("{v:.digits$}");
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            format!("{:.digits$}", 0.0)
        } else {
            s
        }
    }
}

/// A rational rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Window {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidWindow(format!(
                "need x0 < x1 and y0 < y1, got [{}, {}] × [{}, {}]",
                fmt_rational(&x0),
                fmt_rational(&x1),
                fmt_rational(&y0),
                fmt_rational(&y1)
            )));
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn contains(&self, x: &QuadSurd, y: &QuadSurd) -> bool {
        x.cmp_rational(&self.x0) != Ordering::Less
            && x.cmp_rational(&self.x1) != Ordering::Greater
            && y.cmp_rational(&self.y0) != Ordering::Less
            && y.cmp_rational(&self.y1) != Ordering::Greater
    }
}

impl FromStr for Window {
    type Err = Error;
    /// `x0,x1,y0,y1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidWindow(format!("expected x0,x1,y0,y1, got {s:?}")));
        }
        let v: Vec<Rational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
        Window::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }
}

/// An exact point of a level curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvePoint {
    pub x: QuadSurd,
    pub y: QuadSurd,
}

/// Sampled points of one level curve.
#[derive(Clone, Debug)]
pub struct LevelCurve {
    pub level: Level,
    pub class: ConicClass,
    pub points: Vec<CurvePoint>,
}

/// Roots of `a t² + b t + c = 0`; `None` when the equation is trivially true.
fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Option<Vec<QuadSurd>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { None } else { Some(Vec::new()) };
        }
        return Some(vec![QuadSurd::rational(-c / b)]);
    }
    let disc = b * b - int(4) * a * c;
    if disc.is_negative() {
        return Some(Vec::new());
    }
    let mid = -b / (int(2) * a);
    let half = int(1) / (int(2) * a);
    if disc.is_zero() {
        return Some(vec![QuadSurd::rational(mid)]);
    }
    Some(vec![QuadSurd::new(mid.clone(), half.clone(), disc.clone()), QuadSurd::new(mid, -half, disc)])
}

fn grid(lo: &Rational, hi: &Rational, resolution: usize) -> Vec<Rational> {
    let steps = (resolution - 1) as i64;
    (0..=steps).map(|k| lo + (hi - lo) * rat(k, steps)).collect()
}

/// Solves the level conic exactly on `resolution` columns and rows of the
/// window and keeps the points inside it. Base points in the window are
/// always included. Every point is checked to satisfy the conic exactly.
pub fn sample_level_curve(
    family: &PencilFamily,
    level: &Level,
    window: &Window,
    resolution: usize,
) -> Result<LevelCurve> {
    if resolution < 2 {
        return Err(Error::InvalidWindow(format!("resolution must be at least 2, got {resolution}")));
    }
    let conic = conic_at_level(family, level)?;
    let class = classify_conic(&conic);
    let [a, b, c, d, e, f] = conic
        .rational_coeffs()
        .ok_or_else(|| Error::Domain("sampling needs rational coefficients".into()))?;
    let mut points: Vec<CurvePoint> = Vec::new();
    let push = |p: CurvePoint, points: &mut Vec<CurvePoint>| {
        if window.contains(&p.x, &p.y) && !points.contains(&p) {
            points.push(p);
        }
    };
    for x in grid(&window.x0, &window.x1, resolution) {
        let roots = quadratic_roots(&c, &(&b * &x + &e), &(&a * &x * &x + &d * &x + &f));
        for y in roots.unwrap_or_default() {
            push(CurvePoint { x: QuadSurd::rational(x.clone()), y }, &mut points);
        }
    }
    for y in grid(&window.y0, &window.y1, resolution) {
        let roots = quadratic_roots(&a, &(&b * &y + &d), &(&c * &y * &y + &e * &y + &f));
        for x in roots.unwrap_or_default() {
            push(CurvePoint { x, y: QuadSurd::rational(y.clone()) }, &mut points);
        }
    }
    for (x, y) in base_points(family)? {
        push(CurvePoint { x: QuadSurd::rational(x), y: QuadSurd::rational(y) }, &mut points);
    }
    for p in &points {
        let residue = residue(&[&a, &b, &c, &d, &e, &f], &p.x, &p.y);
        if !residue.is_zero() {
            return Err(Error::OracleInvariant(format!("sampled point off the conic at level {level}")));
        }
    }
    points.sort_by(|p, q| p.x.to_f64().total_cmp(&q.x.to_f64()).then(p.y.to_f64().total_cmp(&q.y.to_f64())));
    Ok(LevelCurve { level: level.clone(), class, points })
}

fn residue(k: &[&Rational; 6], x: &QuadSurd, y: &QuadSurd) -> QuadSurd {
    let q = |r: &Rational| QuadSurd::rational(r.clone());
    let terms = [
        q(k[0]).mul(x).mul(x),
        q(k[1]).mul(x).mul(y),
        q(k[2]).mul(y).mul(y),
        q(k[3]).mul(x),
        q(k[4]).mul(y),
        q(k[5]),
    ];
    terms.iter().fold(QuadSurd::rational(int(0)), |acc, t| acc.add(t))
}

const DIGITS: usize = 6;

/// CSV with header `family,level,x,y`; base points carry level `base`.
pub fn to_csv(family: &PencilFamily, curves: &[LevelCurve], window: &Window) -> Result<String> {
    let mut out = String::from("family,level,x,y\n");
    let label = family.label();
    for curve in curves {
        for p in &curve.points {
            let _ = writeln!(out, "{},{},{},{}", label, curve.level, p.x.to_decimal(DIGITS), p.y.to_decimal(DIGITS));
        }
    }
    for (x, y) in base_points(family)? {
        let (x, y) = (QuadSurd::rational(x), QuadSurd::rational(y));
        if window.contains(&x, &y) {
            let _ = writeln!(out, "{},base,{},{}", label, x.to_decimal(DIGITS), y.to_decimal(DIGITS));
        }
    }
    Ok(out)
}

fn dec(r: &Rational) -> String {
    QuadSurd::rational(r.clone()).to_decimal(DIGITS)
}

/// SVG whose viewBox is the window, with the y axis pointing up. Each level
/// curve is one path of round dots; each base point one circle.
pub fn to_svg(family: &PencilFamily, curves: &[LevelCurve], window: &Window) -> Result<String> {
    let w = &window.x1 - &window.x0;
    let h = &window.y1 - &window.y0;
    let stroke = std::cmp::max(w.clone(), h.clone()) / int(300);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="600">"#,
        dec(&window.x0),
        dec(&window.y0),
        dec(&w),
        dec(&h)
    );
    let _ = writeln!(out, "<title>{}</title>", family.label());
    let _ = writeln!(out, r#"<g transform="matrix(1 0 0 -1 0 {})">"#, dec(&(&window.y0 + &window.y1)));
    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];
    for (k, curve) in curves.iter().enumerate() {
        let mut d = String::new();
        for p in &curve.points {
            let _ = write!(d, "M{} {}h0", p.x.to_decimal(DIGITS), p.y.to_decimal(DIGITS));
        }
        let _ = writeln!(
            out,
            r#"<path data-level="{}" data-class="{}" d="{}" stroke="{}" stroke-width="{}" stroke-linecap="round" fill="none"/>"#,
            curve.level,
            curve.class,
            d,
            palette[k % palette.len()],
            dec(&stroke)
        );
    }
    for (x, y) in base_points(family)? {
        let (qx, qy) = (QuadSurd::rational(x.clone()), QuadSurd::rational(y.clone()));
        if window.contains(&qx, &qy) {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
                dec(&x),
                dec(&y),
                dec(&(&stroke * int(2)))
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Exact dump of a curve, for JSON consumers.
#[derive(Clone, Debug, Serialize)]
pub struct ExactPoint {
    pub x: [String; 3],
    pub y: [String; 3],
}

impl From<&CurvePoint> for ExactPoint {
    fn from(p: &CurvePoint) -> Self {
        let f = |q: &QuadSurd| [fmt_rational(&q.a), fmt_rational(&q.b), fmt_rational(&q.radicand)];
        ExactPoint { x: f(&p.x), y: f(&p.y) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_comparison() {
        let s = QuadSurd::new(int(1), int(-1), int(2));
        assert_eq!(s.cmp_rational(&int(0)), Ordering::Less);
        assert_eq!(s.cmp_rational(&rat(-1, 2)), Ordering::Greater);
        assert!(QuadSurd::new(int(1), int(1), int(4)).is_rational());
    }

    #[test]
    fn rtilde_samples_are_exact() {
        let w = Window::new(int(-2), int(6), int(-3), int(3)).unwrap();
        let c = sample_level_curve(&PencilFamily::Rtilde, &Level::Finite(int(4)), &w, 9).unwrap();
        assert_eq!(c.class, ConicClass::Ellipse);
        assert!(c.points.len() > 8);
    }
}
