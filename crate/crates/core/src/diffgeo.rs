//! Fundamental forms, the Weingarten matrix and curvature.
//!
//! Two Gaussian curvatures live side by side here:
//!
//! * `K_forms = (LN - M²) / (EG - F²)`, the determinant of the Weingarten
//!   matrix, valid for every family;
//! * `K_paper`, the closed form stated for the n-coral,
//!   `-(2(n²-2) cos² nv + n² sin² nv) / A³` with
//!   `A² = n²u² sin² nv + 4u² cos² nv + 1`.
//!
//! Expanding `det(II) / det(I)` for the coral gives the same numerator
//! over `A⁴`, so `K_paper = A · K_forms` identically. The two agree only on the
//! axis `u = 0`. Both are reported; neither is adjusted to match the other.
//!
//! Orientation follows `r_u × r_v`. Flipping the normal flips `H`, `k1` and
//! `k2` but leaves `K` unchanged.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::Serialize;

use crate::surface::{DomainPoint, Jet2, SurfaceFamily, SurfaceKind, Vec3};
use crate::{Error, Result};

/// `det(I)` below `REGULARITY_TOLERANCE * max(1, E·G)` counts as singular.
pub const REGULARITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn is_regular(&self) -> bool {
        self.det() >= REGULARITY_TOLERANCE * (self.e * self.g).max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondForm {
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl SecondForm {
    pub fn det(&self) -> f64 {
        self.l * self.n - self.m * self.m
    }
}

/// Both forms at one point plus the auxiliary scalar `A` (radial families
/// only, where `‖r_u × r_v‖ = u·A`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub a: Option<f64>,
}

impl FundamentalForms {
    pub fn first(&self) -> FirstForm {
        FirstForm {
            e: self.e,
            f: self.f,
            g: self.g,
        }
    }

    pub fn second(&self) -> SecondForm {
        SecondForm {
            l: self.l,
            m: self.m,
            n: self.n,
        }
    }
}

pub fn first_form(j: &Jet2) -> FirstForm {
    FirstForm {
        e: j.ru.dot(j.ru),
        f: j.ru.dot(j.rv),
        g: j.rv.dot(j.rv),
    }
}

/// `(r_u × r_v) / ‖r_u × r_v‖`. Fails where the cross product vanishes
/// (the coral axis `u = 0`).
pub fn unit_normal(j: &Jet2) -> Result<Vec3> {
    let c = j.ru.cross(j.rv);
    let scale = (j.ru.norm_squared() * j.rv.norm_squared()).max(1.0);
    if c.norm_squared() < REGULARITY_TOLERANCE * scale {
        return Err(Error::SingularPoint { at: None });
    }
    Ok(c * (1.0 / c.norm()))
}

pub fn second_form(j: &Jet2, normal: Vec3) -> SecondForm {
    SecondForm {
        l: j.ruu.dot(normal),
        m: j.ruv.dot(normal),
        n: j.rvv.dot(normal),
    }
}

/// Matrix of the shape operator in the `{r_u, r_v}` basis, `W = I⁻¹ · II`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeingartenMatrix {
    pub w11: f64,
    pub w12: f64,
    pub w21: f64,
    pub w22: f64,
}

impl WeingartenMatrix {
    pub fn det(&self) -> f64 {
        self.w11 * self.w22 - self.w12 * self.w21
    }

    pub fn trace(&self) -> f64 {
        self.w11 + self.w22
    }

    pub fn mean_curvature(&self) -> f64 {
        0.5 * self.trace()
    }

    /// `det(W - λ·Id)`.
    pub fn characteristic(&self, lambda: f64) -> f64 {
        (self.w11 - lambda) * (self.w22 - lambda) - self.w12 * self.w21
    }

    /// Eigenvalues `(k1, k2)` with `k1 >= k2`.
    ///
    /// `W` is self-adjoint with respect to the first form, so the
    /// eigenvalues are real; a slightly negative discriminant from rounding
    /// is clamped to zero.
    pub fn principal_curvatures(&self) -> (f64, f64) {
        let h = self.mean_curvature();
        let half_gap = 0.5 * (self.w11 - self.w22);
        let disc = (half_gap * half_gap + self.w12 * self.w21).max(0.0);
        let r = disc.sqrt();
        (h + r, h - r)
    }
}

/// Cofactor expansion of `I⁻¹ · II`.
pub fn weingarten(first: &FirstForm, second: &SecondForm) -> Result<WeingartenMatrix> {
    if !first.is_regular() {
        return Err(Error::SingularMetric { det: first.det() });
    }
    let FirstForm { e, f, g } = *first;
    let SecondForm { l, m, n } = *second;
    let inv = 1.0 / first.det();
    Ok(WeingartenMatrix {
        w11: (g * l - f * m) * inv,
        w12: (g * m - f * n) * inv,
        w21: (e * m - f * l) * inv,
        w22: (e * n - f * m) * inv,
    })
}

pub fn gaussian_curvature_from_forms(first: &FirstForm, second: &SecondForm) -> Result<f64> {
    if !first.is_regular() {
        return Err(Error::SingularMetric { det: first.det() });
    }
    Ok(second.det() / first.det())
}

/// `A = sqrt(n²u² sin² nv + 4u² cos² nv + 1)` for the n-coral.
pub fn coral_area_factor(n: u32, q: DomainPoint) -> f64 {
    let n = f64::from(n);
    let (s, c) = (n * q.v).sin_cos();
    let u2 = q.u * q.u;
    (n * n * u2 * s * s + 4.0 * u2 * c * c + 1.0).sqrt()
}

/// Numerator `2(n²-2) cos² nv + n² sin² nv` shared by both curvature forms.
fn coral_curvature_numerator(n: u32, v: f64) -> f64 {
    let n = f64::from(n);
    let (s, c) = (n * v).sin_cos();
    2.0 * (n * n - 2.0) * c * c + n * n * s * s
}

/// The closed-form n-coral curvature exactly as stated, with the 3/2
/// exponent on `A²`. Meant for `n >= 2`.
pub fn coral_curvature_paper(n: u32, q: DomainPoint) -> f64 {
    let a = coral_area_factor(n, q);
    -coral_curvature_numerator(n, q.v) / (a * a * a)
}

/// `lim K_forms` as `u → 0⁺` along the ray at angle `v`. Finite for every
/// `n`, though direction-dependent unless `n = 2`.
pub fn coral_axis_limit(n: u32, v: f64) -> f64 {
    -coral_curvature_numerator(n, v)
}

/// Everything known about the curvature of a surface at one point.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub surface: SurfaceFamily,
    pub point: DomainPoint,
    pub in_canonical_domain: bool,
    pub forms: FundamentalForms,
    pub normal: Vec3,
    pub weingarten: WeingartenMatrix,
    #[serde(rename = "K_forms")]
    pub k_forms: f64,
    #[serde(rename = "K_paper")]
    pub k_paper: Option<f64>,
    #[serde(rename = "H")]
    pub h: f64,
    pub k1: f64,
    pub k2: f64,
    /// `K_paper - A·K_forms`; zero up to rounding.
    pub discrepancy: Option<f64>,
}

impl CurvatureReport {
    /// `K_paper / K_forms`, which equals `A` wherever both are defined.
    pub fn paper_to_forms_ratio(&self) -> Option<f64> {
        self.k_paper.map(|k| k / self.k_forms)
    }
}

pub fn forms_at(s: &SurfaceFamily, q: DomainPoint) -> Result<(Jet2, Vec3, FundamentalForms)> {
    let j = s.jet(q);
    let normal = unit_normal(&j).map_err(|_| Error::SingularPoint { at: Some(q) })?;
    let first = first_form(&j);
    let second = second_form(&j, normal);
    let a = s.is_radial().then(|| coral_area_factor(s.n(), q));
    let forms = FundamentalForms {
        e: first.e,
        f: first.f,
        g: first.g,
        l: second.l,
        m: second.m,
        n: second.n,
        a,
    };
    Ok((j, normal, forms))
}

pub fn curvature_report(s: &SurfaceFamily, q: DomainPoint) -> Result<CurvatureReport> {
    let (_, normal, forms) = forms_at(s, q)?;
    let (first, second) = (forms.first(), forms.second());
    let w = weingarten(&first, &second).map_err(|_| Error::SingularPoint { at: Some(q) })?;
    let k_forms = gaussian_curvature_from_forms(&first, &second)?;
    let (k1, k2) = w.principal_curvatures();
    let k_paper = (s.kind() == SurfaceKind::NCoral).then(|| coral_curvature_paper(s.n(), q));
    let discrepancy = match (k_paper, forms.a) {
        (Some(kp), Some(a)) => Some(kp - a * k_forms),
        _ => None,
    };
    Ok(CurvatureReport {
        surface: *s,
        point: q,
        in_canonical_domain: q.in_canonical_domain(),
        forms,
        normal,
        weingarten: w,
        k_forms,
        k_paper,
        h: w.mean_curvature(),
        k1,
        k2,
        discrepancy,
    })
}

/// `K_forms` alone, skipping the report bookkeeping.
pub fn gaussian_curvature(s: &SurfaceFamily, q: DomainPoint) -> Result<f64> {
    let (_, _, forms) = forms_at(s, q)?;
    gaussian_curvature_from_forms(&forms.first(), &forms.second())
}

/// Rounds to `decimals` places, ties away from zero.
pub fn round_half_away(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableCell {
    pub u: f64,
    pub v: f64,
    #[serde(rename = "K_paper")]
    pub k_paper: f64,
    /// Absent at singular points.
    #[serde(rename = "K_forms")]
    pub k_forms: Option<f64>,
}

/// Grid of n-coral curvatures, row-major over `u` then `v`.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureTable {
    pub n: u32,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    pub cells: Vec<TableCell>,
}

pub fn curvature_table(n: u32, us: &[f64], vs: &[f64]) -> Result<CurvatureTable> {
    if us.is_empty() || vs.is_empty() {
        return Err(Error::invalid(
            "curvature table needs at least one u and one v",
        ));
    }
    let s = SurfaceFamily::coral(n)?;
    let cells = us
        .iter()
        .flat_map(|&u| vs.iter().map(move |&v| DomainPoint::new(u, v)))
        .map(|q| TableCell {
            u: q.u,
            v: q.v,
            k_paper: coral_curvature_paper(n, q),
            k_forms: gaussian_curvature(&s, q).ok(),
        })
        .collect();
    Ok(CurvatureTable {
        n,
        us: us.to_vec(),
        vs: vs.to_vec(),
        cells,
    })
}

impl CurvatureTable {
    pub fn cell(&self, iu: usize, iv: usize) -> &TableCell {
        &self.cells[iu * self.vs.len() + iv]
    }

    fn fmt_value(x: f64, rounded: bool) -> String {
        if rounded {
            format!("{:.2}", round_half_away(x, 2))
        } else {
            format!("{x}")
        }
    }

    /// CSV with header `u,v,K_paper,K_forms`. Singular `K_forms` cells are
    /// left empty.
    pub fn to_csv(&self, rounded: bool) -> String {
        let mut out = String::from("u,v,K_paper,K_forms\n");
        for c in &self.cells {
            let kf = c
                .k_forms
                .map(|k| Self::fmt_value(k, rounded))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                c.u,
                c.v,
                Self::fmt_value(c.k_paper, rounded),
                kf
            );
        }
        out
    }

    /// Two aligned grids (rows `u`, columns `v`), one per curvature.
    pub fn to_text(&self, rounded: bool) -> String {
        let mut out = String::new();
        let grids: [CellColumn; 2] = [("K_paper", |c| Some(c.k_paper)), ("K_forms", |c| c.k_forms)];
        for (gi, (name, get)) in grids.iter().enumerate() {
            if gi > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{name} (n={})", self.n);
            let _ = write!(out, "{:>12}", "u \\ v");
            for v in &self.vs {
                let _ = write!(out, " {:>20}", format!("{v}"));
            }
            out.push('\n');
            for (iu, u) in self.us.iter().enumerate() {
                let _ = write!(out, "{:>12}", format!("{u}"));
                for iv in 0..self.vs.len() {
                    let cell = get(self.cell(iu, iv))
                        .map(|k| Self::fmt_value(k, rounded))
                        .unwrap_or_else(|| "singular".into());
                    let _ = write!(out, " {cell:>20}");
                }
                out.push('\n');
            }
        }
        out
    }
}

type CellColumn = (&'static str, fn(&TableCell) -> Option<f64>);

/// Spread of `K_forms` over a grid of the canonical domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationSummary {
    pub samples: usize,
    pub u_floor: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
    pub max_abs_deviation: f64,
    /// Largest standard deviation of `K` along a single circle `u = const`.
    pub max_circle_std: f64,
    pub all_negative: bool,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let len = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / len;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / len;
    (mean, var.sqrt())
}

/// Samples `nu` circles with `u` evenly spaced over `[u_floor, 2]`, each at
/// `nv` angles evenly spaced over `[0, 2π)`.
pub fn deviation_report(
    s: &SurfaceFamily,
    nu: usize,
    nv: usize,
    u_floor: f64,
) -> Result<DeviationSummary> {
    if !s.is_radial() {
        return Err(Error::invalid(format!(
            "deviation report is defined for the coral family, got {s}"
        )));
    }
    if nu < 2 || nv < 1 {
        return Err(Error::invalid("deviation grid needs nu >= 2 and nv >= 1"));
    }
    if !(u_floor > 0.0 && u_floor < 2.0) {
        return Err(Error::invalid(format!(
            "u floor must lie in (0, 2), got {u_floor}"
        )));
    }
    let mut all = Vec::with_capacity(nu * nv);
    let mut max_circle_std = 0.0f64;
    for i in 0..nu {
        let u = u_floor + (2.0 - u_floor) * i as f64 / (nu - 1) as f64;
        let row = (0..nv)
            .map(|k| gaussian_curvature(s, DomainPoint::new(u, TAU * k as f64 / nv as f64)))
            .collect::<Result<Vec<_>>>()?;
        max_circle_std = max_circle_std.max(mean_std(&row).1);
        all.extend(row);
    }
    let (mean, std) = mean_std(&all);
    let min = all.iter().copied().fold(f64::INFINITY, f64::min);
    let max = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_abs_deviation = all.iter().map(|k| (k - mean).abs()).fold(0.0, f64::max);
    Ok(DeviationSummary {
        samples: all.len(),
        u_floor,
        min,
        max,
        mean,
        std,
        max_abs_deviation,
        max_circle_std,
        all_negative: max < 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn coral(n: u32) -> SurfaceFamily {
        SurfaceFamily::coral(n).unwrap()
    }

    fn sqrt5() -> f64 {
        5f64.sqrt()
    }

    #[test]
    fn first_form_examples() {
        let first = first_form(&coral(4).jet(DomainPoint::new(1.0, 0.0)));
        assert_eq!((first.e, first.f, first.g), (5.0, 0.0, 1.0));

        let first = first_form(&coral(2).jet(DomainPoint::new(1.0, FRAC_PI_4)));
        assert_relative_eq!(first.e, 1.0, epsilon = 1e-14);
        assert!(first.f.abs() < 1e-14);
        assert_relative_eq!(first.g, 5.0, epsilon = 1e-14);

        for s in [coral(3), SurfaceFamily::paraboloid()] {
            let first = first_form(&s.jet(DomainPoint::new(0.0, 0.9)));
            assert_eq!((first.f, first.g), (0.0, 0.0));
        }
    }

    #[test]
    fn normal_examples() {
        let nrm = unit_normal(&coral(4).jet(DomainPoint::new(1.0, 0.0))).unwrap();
        assert!(nrm.max_abs_diff(Vec3::new(2.0, 0.0, 1.0) * (1.0 / sqrt5())) < 1e-15);

        let err = unit_normal(&coral(4).jet(DomainPoint::new(0.0, 0.3))).unwrap_err();
        assert!(matches!(err, Error::SingularPoint { .. }));
    }

    #[test]
    fn second_form_examples() {
        let j = coral(4).jet(DomainPoint::new(1.0, 0.0));
        let second = second_form(&j, unit_normal(&j).unwrap());
        assert_relative_eq!(second.l, -2.0 / sqrt5(), epsilon = 1e-15);
        assert!(second.m.abs() < 1e-15);
        assert_relative_eq!(second.n, 14.0 / sqrt5(), epsilon = 1e-14);

        // cos 2v = 0 at v = π/4
        let j = coral(2).jet(DomainPoint::new(1.3, FRAC_PI_4));
        let second = second_form(&j, unit_normal(&j).unwrap());
        assert!(
            second.l.abs() < 1e-15 && second.n.abs() < 1e-14,
            "{second:?}"
        );

        let j = coral(4).jet(DomainPoint::new(0.5, FRAC_PI_8));
        let second = second_form(&j, unit_normal(&j).unwrap());
        assert_relative_eq!(second.m, 2.0 / sqrt5(), epsilon = 1e-14);
    }

    #[test]
    fn weingarten_examples() {
        let first = FirstForm {
            e: 5.0,
            f: 0.0,
            g: 1.0,
        };
        let second = SecondForm {
            l: -2.0 / sqrt5(),
            m: 0.0,
            n: 14.0 / sqrt5(),
        };
        let w = weingarten(&first, &second).unwrap();
        assert_relative_eq!(w.w11, -2.0 / (5.0 * sqrt5()), epsilon = 1e-15);
        assert_eq!((w.w12, w.w21), (0.0, 0.0));
        assert_relative_eq!(w.w22, 14.0 / sqrt5(), epsilon = 1e-15);
        assert_relative_eq!(w.det(), -1.12, epsilon = 1e-14);

        let id = weingarten(
            &FirstForm {
                e: 1.0,
                f: 0.0,
                g: 1.0,
            },
            &SecondForm {
                l: 1.0,
                m: 0.0,
                n: 1.0,
            },
        )
        .unwrap();
        assert_eq!(
            id,
            WeingartenMatrix {
                w11: 1.0,
                w12: 0.0,
                w21: 0.0,
                w22: 1.0
            }
        );
    }

    #[test]
    fn singular_metric_is_rejected() {
        let first = FirstForm {
            e: 1.0,
            f: 0.0,
            g: 0.0,
        };
        let second = SecondForm {
            l: 1.0,
            m: 0.0,
            n: 0.0,
        };
        assert!(matches!(
            weingarten(&first, &second),
            Err(Error::SingularMetric { .. })
        ));
        assert!(gaussian_curvature_from_forms(&first, &second).is_err());
    }

    #[test]
    fn forms_curvature_examples() {
        let k = gaussian_curvature(&coral(2), DomainPoint::new(1.0, 2.2)).unwrap();
        assert_relative_eq!(k, -0.16, epsilon = 1e-14);
        let k = gaussian_curvature(&coral(4), DomainPoint::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(k, -1.12, epsilon = 1e-14);
        let flat = gaussian_curvature_from_forms(
            &FirstForm {
                e: 1.0,
                f: 0.0,
                g: 1.0,
            },
            &SecondForm {
                l: 0.0,
                m: 0.0,
                n: 0.0,
            },
        )
        .unwrap();
        assert_eq!(flat, 0.0);
    }

    #[test]
    fn stated_closed_form_values() {
        let k = coral_curvature_paper(4, DomainPoint::new(0.5, TAU));
        assert!((k - -9.89).abs() <= 0.01, "{k}");
        let k = coral_curvature_paper(4, DomainPoint::new(2.0, FRAC_PI_2));
        assert!((k - -0.39).abs() <= 0.01, "{k}");
        assert_eq!(coral_curvature_paper(2, DomainPoint::new(0.0, 1.1)), -4.0);
    }

    #[test]
    fn closed_form_specializations() {
        for i in 0..50 {
            let u = 0.04 * f64::from(i);
            let v = 0.13 * f64::from(i);
            let q = DomainPoint::new(u, v);
            let two = -4.0 / (4.0 * u * u + 1.0).powf(1.5);
            assert_relative_eq!(coral_curvature_paper(2, q), two, max_relative = 1e-13);
            let s2 = (4.0 * v).sin().powi(2);
            let four = (12.0 * s2 - 28.0) / (12.0 * u * u * s2 + 4.0 * u * u + 1.0).powf(1.5);
            assert_relative_eq!(coral_curvature_paper(4, q), four, max_relative = 1e-12);
        }
    }

    #[test]
    fn report_at_unit_radius() {
        let r = curvature_report(&coral(4), DomainPoint::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(r.k_forms, -1.12, epsilon = 1e-14);
        assert_relative_eq!(r.k_paper.unwrap(), -2.504_396_134_799_764, epsilon = 1e-12);
        assert_relative_eq!(r.forms.a.unwrap(), sqrt5(), epsilon = 1e-15);
        assert!(r.discrepancy.unwrap().abs() < 1e-9);
        assert_relative_eq!(r.h, 34.0 / (5.0 * sqrt5()), epsilon = 1e-13);
        assert_relative_eq!(r.paper_to_forms_ratio().unwrap(), sqrt5(), epsilon = 1e-13);
        assert!(r.in_canonical_domain);
        assert_relative_eq!(r.k1 * r.k2, r.k_forms, max_relative = 1e-12);
    }

    #[test]
    fn report_singular_on_axis() {
        let err = curvature_report(&coral(4), DomainPoint::new(0.0, 0.0)).unwrap_err();
        match err {
            Error::SingularPoint { at: Some(q) } => assert_eq!(q, DomainPoint::new(0.0, 0.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lettuce_report_has_no_closed_form() {
        let s = SurfaceFamily::lettuce(3).unwrap();
        let r = curvature_report(&s, DomainPoint::new(0.0, 1.0)).unwrap();
        assert!(r.k_paper.is_none() && r.discrepancy.is_none() && r.forms.a.is_none());
    }

    #[test]
    fn two_coral_is_constant_on_circles() {
        let s = coral(2);
        let k0 = gaussian_curvature(&s, DomainPoint::new(1.0, 0.0)).unwrap();
        for i in 1..40 {
            let k = gaussian_curvature(&s, DomainPoint::new(1.0, 0.157 * f64::from(i))).unwrap();
            assert!((k - k0).abs() < 1e-12);
        }
    }

    #[test]
    fn table_examples() {
        let t = curvature_table(4, &[0.5, 1.0, 1.5, 2.0], &[TAU, FRAC_PI_2]).unwrap();
        let stated = [-9.89, -2.50, -0.88, -0.39];
        for (iu, want) in stated.iter().enumerate() {
            for iv in 0..2 {
                let got = t.cell(iu, iv).k_paper;
                assert!((got - want).abs() <= 0.01, "u idx {iu}: {got}");
            }
        }
        let single = curvature_table(4, &[1.0], &[0.0]).unwrap();
        assert_eq!(round_half_away(single.cells[0].k_paper, 2), -2.50);

        let t2 = curvature_table(2, &[0.3, 1.7], &[0.0, 1.0, 2.0]).unwrap();
        for iu in 0..2 {
            let a = t2.cell(iu, 0);
            for iv in 1..3 {
                let b = t2.cell(iu, iv);
                assert!((a.k_paper - b.k_paper).abs() < 1e-12);
                assert!((a.k_forms.unwrap() - b.k_forms.unwrap()).abs() < 1e-12);
            }
        }
        assert!(curvature_table(4, &[], &[0.0]).is_err());
    }

    #[test]
    fn table_csv_layout() {
        let t = curvature_table(4, &[0.0, 1.0], &[0.0]).unwrap();
        assert_eq!(
            t.to_csv(true),
            "u,v,K_paper,K_forms\n0,0,-28.00,\n1,0,-2.50,-1.12\n"
        );
    }

    #[test]
    fn rounding_ties_away_from_zero() {
        assert_eq!(round_half_away(-0.125, 2), -0.13);
        assert_eq!(round_half_away(0.125, 2), 0.13);
        assert_eq!(round_half_away(-2.504, 2), -2.5);
    }

    #[test]
    fn deviation_examples() {
        let d = deviation_report(&coral(4), 64, 64, 0.1).unwrap();
        assert!(d.max < 0.0 && d.all_negative);
        assert!(d.std > 0.0);
        assert_eq!(d.samples, 64 * 64);

        let d2 = deviation_report(&coral(2), 16, 64, 0.1).unwrap();
        assert!(d2.max_circle_std < 1e-12, "{}", d2.max_circle_std);
        assert!(d2.std > 0.0);

        assert!(deviation_report(&SurfaceFamily::lettuce(4).unwrap(), 8, 8, 0.1).is_err());
        assert!(deviation_report(&coral(4), 8, 8, 0.0).is_err());
    }

    #[test]
    fn axis_limit_matches_small_radius() {
        for n in 2..6 {
            for k in 0..12 {
                let v = 0.5 * f64::from(k);
                let near = gaussian_curvature(&coral(n), DomainPoint::new(1e-5, v)).unwrap();
                assert_relative_eq!(near, coral_axis_limit(n, v), max_relative = 1e-6);
            }
        }
    }
}
