//! Analytic self-maps of the disk.

use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Symbol catalog; also the config-file representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolSpec {
    /// T_a(z) = (a + z)/(1 + ā z).
    Mobius {
        a: f64,
        #[serde(default)]
        a_im: f64,
    },
    Monomial { k: u32 },
    Rotation { theta: f64 },
    /// z((1 + z^{m−n})/2)^{1/n}, principal branch.
    PhiMn { m: u32, n: u32 },
    /// z + t(1 − z)^γ.
    KrieteMaccluer { gamma: f64, t: f64 },
    /// T_a(z^n).
    BlaschkeFactor {
        a: f64,
        #[serde(default)]
        a_im: f64,
        n: u32,
    },
    Product { factors: Vec<SymbolSpec> },
    /// outer ∘ inner.
    Compose { outer: Box<SymbolSpec>, inner: Box<SymbolSpec> },
}

impl SymbolSpec {
    pub fn mobius(a: f64) -> Self {
        SymbolSpec::Mobius { a, a_im: 0.0 }
    }
    pub fn mobius_c(a: C) -> Self {
        SymbolSpec::Mobius { a: a.re, a_im: a.im }
    }
    pub fn blaschke(a: f64, n: u32) -> Self {
        SymbolSpec::BlaschkeFactor { a, a_im: 0.0, n }
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolSpec::Mobius { a, a_im } if *a_im == 0.0 => write!(f, "mobius:a={a}"),
            SymbolSpec::Mobius { a, a_im } => write!(f, "mobius:a={a},a_im={a_im}"),
            SymbolSpec::Monomial { k } => write!(f, "monomial:k={k}"),
            SymbolSpec::Rotation { theta } => write!(f, "rotation:theta={theta}"),
            SymbolSpec::PhiMn { m, n } => write!(f, "phi_mn:m={m},n={n}"),
            SymbolSpec::KrieteMaccluer { gamma, t } => write!(f, "kriete_maccluer:gamma={gamma},t={t}"),
            SymbolSpec::BlaschkeFactor { a, a_im, n } if *a_im == 0.0 => write!(f, "blaschke_factor:a={a},n={n}"),
            SymbolSpec::BlaschkeFactor { a, a_im, n } => write!(f, "blaschke_factor:a={a},a_im={a_im},n={n}"),
            SymbolSpec::Product { factors } => {
                f.write_str("product(")?;
                for (i, s) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
            SymbolSpec::Compose { outer, inner } => write!(f, "compose({outer} o {inner})"),
        }
    }
}

/// Parses the single-factor forms `name:key=value,…`, e.g. `mobius:a=0.5`.
impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = crate::weights::split_spec(s)?;
        let get = |k: &str| -> Result<f64> {
            params
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs parameter `{k}`")))
        };
        let int = |k: &str| -> Result<u32> {
            let v = get(k)?;
            if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as u32)
            } else {
                Err(Error::InvalidParameter(format!("`{k}` must be a nonnegative integer, got {v}")))
            }
        };
        Ok(match name.as_str() {
            "mobius" => SymbolSpec::Mobius { a: get("a")?, a_im: get("a_im").unwrap_or(0.0) },
            "monomial" => SymbolSpec::Monomial { k: int("k")? },
            "rotation" => SymbolSpec::Rotation { theta: get("theta")? },
            "phi_mn" => SymbolSpec::PhiMn { m: int("m")?, n: int("n")? },
            "kriete_maccluer" => SymbolSpec::KrieteMaccluer { gamma: get("gamma")?, t: get("t")? },
            "blaschke_factor" => {
                SymbolSpec::BlaschkeFactor { a: get("a")?, a_im: get("a_im").unwrap_or(0.0), n: int("n")? }
            }
            _ => return Err(Error::UnknownCatalog(name)),
        })
    }
}

/// What is known about the boundary behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// |φ| = 1 on the circle.
    Inner,
    /// ‖φ‖_∞ < 1 is known.
    Contractive,
    /// Continuous on the closed disk with |φ| ≤ 1; nothing more known.
    Continuous,
}

/// An analytic self-map of the disk.
#[derive(Debug, Clone)]
pub struct Symbol {
    spec: SymbolSpec,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Mobius(C),
    Monomial(u32),
    Rotation(C),
    PhiMn(u32, u32),
    Km(f64, f64),
    Blaschke(C, u32),
    Product(Vec<Symbol>),
    Compose(Box<Symbol>, Box<Symbol>),
}

pub fn make_symbol(spec: &SymbolSpec) -> Result<Symbol> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    let kind = match spec {
        SymbolSpec::Mobius { a, a_im } => {
            let a = c(*a, *a_im);
            if !(a.norm() < 1.0) {
                return bad(format!("mobius needs |a| < 1, got {a}"));
            }
            Kind::Mobius(a)
        }
        SymbolSpec::Monomial { k } => {
            if *k == 0 {
                return bad("monomial needs k >= 1".into());
            }
            Kind::Monomial(*k)
        }
        SymbolSpec::Rotation { theta } => {
            if !theta.is_finite() {
                return bad("rotation angle must be finite".into());
            }
            Kind::Rotation(C::from_polar(1.0, *theta))
        }
        SymbolSpec::PhiMn { m, n } => {
            if !(*m > *n && *n >= 1) {
                return bad(format!("phi_mn needs m > n >= 1, got m={m}, n={n}"));
            }
            Kind::PhiMn(*m, *n)
        }
        SymbolSpec::KrieteMaccluer { gamma, t } => {
            if !(*gamma > 1.0 && *gamma <= 3.0) {
                return bad(format!("kriete_maccluer needs gamma in (1, 3], got {gamma}"));
            }
            if !(*t > 0.0 && *t < 2f64.powf(1.0 - gamma)) {
                return bad(format!("kriete_maccluer needs t in (0, 2^(1-gamma)), got {t}"));
            }
            Kind::Km(*gamma, *t)
        }
        SymbolSpec::BlaschkeFactor { a, a_im, n } => {
            let a = c(*a, *a_im);
            if !(a.norm() < 1.0) || *n == 0 {
                return bad(format!("blaschke_factor needs |a| < 1 and n >= 1, got a={a}, n={n}"));
            }
            Kind::Blaschke(a, *n)
        }
        SymbolSpec::Product { factors } => {
            if factors.is_empty() {
                return bad("empty product".into());
            }
            Kind::Product(factors.iter().map(make_symbol).collect::<Result<_>>()?)
        }
        SymbolSpec::Compose { outer, inner } => {
            Kind::Compose(Box::new(make_symbol(outer)?), Box::new(make_symbol(inner)?))
        }
    };
    Ok(Symbol { spec: spec.clone(), kind })
}

fn mobius(a: C, z: C) -> C {
    (a + z) / (C::new(1.0, 0.0) + a.conj() * z)
}

impl Symbol {
    pub fn spec(&self) -> &SymbolSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    /// φ(z); valid for |z| < continuation_radius.
    pub fn eval(&self, z: C) -> C {
        match &self.kind {
            Kind::Mobius(a) => mobius(*a, z),
            Kind::Monomial(k) => z.powu(*k),
            Kind::Rotation(r) => r * z,
            Kind::PhiMn(m, n) => {
                let w = (C::new(1.0, 0.0) + z.powu(m - n)) * 0.5;
                z * w.powf(1.0 / *n as f64)
            }
            Kind::Km(g, t) => z + (C::new(1.0, 0.0) - z).powf(*g) * *t,
            Kind::Blaschke(a, n) => mobius(*a, z.powu(*n)),
            Kind::Product(fs) => fs.iter().fold(C::new(1.0, 0.0), |p, f| p * f.eval(z)),
            Kind::Compose(o, i) => o.eval(i.eval(z)),
        }
    }

    /// φ(e^{ix}).
    pub fn eval_boundary(&self, x: f64) -> C {
        self.eval(C::from_polar(1.0, x))
    }

    pub fn origin_value(&self) -> C {
        self.eval(C::new(0.0, 0.0))
    }

    /// Radius R ≥ 1 of analytic continuation (`f64::INFINITY` for entire symbols).
    pub fn continuation_radius(&self) -> f64 {
        match &self.kind {
            Kind::Mobius(a) => {
                if a.norm() == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / a.norm()
                }
            }
            Kind::Monomial(_) | Kind::Rotation(_) => f64::INFINITY,
            // branch points on the unit circle
            Kind::PhiMn(..) | Kind::Km(..) => 1.0,
            Kind::Blaschke(a, n) => {
                if a.norm() == 0.0 {
                    f64::INFINITY
                } else {
                    (1.0 / a.norm()).powf(1.0 / *n as f64)
                }
            }
            Kind::Product(fs) => fs.iter().map(Symbol::continuation_radius).fold(f64::INFINITY, f64::min),
            Kind::Compose(o, i) => {
                let ri = i.continuation_radius();
                let ro = o.continuation_radius();
                if ri <= 1.0 {
                    return 1.0;
                }
                if ro.is_infinite() {
                    return ri;
                }
                // largest sampled radius where the inner map stays well inside the outer disk
                let top = if ri.is_finite() { ri } else { 4.0 };
                let mut best = 1.0;
                for j in 1..=64 {
                    let r = 1.0 + (top - 1.0) * j as f64 / 64.0;
                    if r >= ri {
                        break;
                    }
                    if i.max_modulus(r, 1024) < ro * (1.0 - 1e-3) {
                        best = r;
                    } else {
                        break;
                    }
                }
                best
            }
        }
    }

    pub fn boundary_kind(&self) -> BoundaryKind {
        match &self.kind {
            Kind::Mobius(_) | Kind::Monomial(_) | Kind::Rotation(_) | Kind::Blaschke(..) => BoundaryKind::Inner,
            Kind::PhiMn(..) | Kind::Km(..) => BoundaryKind::Continuous,
            Kind::Product(fs) => {
                let kinds: Vec<_> = fs.iter().map(Symbol::boundary_kind).collect();
                if kinds.iter().all(|k| *k == BoundaryKind::Inner) {
                    BoundaryKind::Inner
                } else if kinds.contains(&BoundaryKind::Contractive) {
                    BoundaryKind::Contractive
                } else {
                    BoundaryKind::Continuous
                }
            }
            Kind::Compose(o, i) => match (o.boundary_kind(), i.boundary_kind()) {
                (BoundaryKind::Inner, BoundaryKind::Inner) => BoundaryKind::Inner,
                (BoundaryKind::Contractive, _) => BoundaryKind::Contractive,
                _ => BoundaryKind::Continuous,
            },
        }
    }

    /// True when φ(z̄) = conj φ(z), so every power has real Taylor coefficients.
    pub fn has_real_coefficients(&self) -> bool {
        match &self.kind {
            Kind::Mobius(a) | Kind::Blaschke(a, _) => a.im == 0.0,
            Kind::Monomial(_) | Kind::PhiMn(..) | Kind::Km(..) => true,
            Kind::Rotation(u) => u.im == 0.0,
            Kind::Product(fs) => fs.iter().all(Symbol::has_real_coefficients),
            Kind::Compose(o, i) => o.has_real_coefficients() && i.has_real_coefficients(),
        }
    }

    pub fn is_inner(&self) -> bool {
        self.boundary_kind() == BoundaryKind::Inner
    }

    /// Rough bound on the angular speed |d/dx φ(e^{ix})|, used to size transform grids.
    pub fn boundary_frequency(&self) -> f64 {
        match &self.kind {
            Kind::Mobius(a) => (1.0 + a.norm()) / (1.0 - a.norm()),
            Kind::Monomial(k) => *k as f64,
            Kind::Rotation(_) => 1.0,
            Kind::PhiMn(m, _) => *m as f64,
            Kind::Km(..) => 2.0,
            Kind::Blaschke(a, n) => *n as f64 * (1.0 + a.norm()) / (1.0 - a.norm()),
            Kind::Product(fs) => fs.iter().map(Symbol::boundary_frequency).sum(),
            Kind::Compose(o, i) => o.boundary_frequency() * i.boundary_frequency(),
        }
    }

    /// Sampled max of |φ| on the circle |z| = r.
    pub fn max_modulus(&self, r: f64, samples: usize) -> f64 {
        (0..samples)
            .map(|j| self.eval(C::from_polar(r, 2.0 * PI * j as f64 / samples as f64)).norm())
            .fold(0.0, f64::max)
    }

    /// First `len` Taylor coefficients, when the symbol has a known series.
    pub fn taylor(&self, len: usize) -> Option<Vec<C>> {
        let zero = C::new(0.0, 0.0);
        let mut v = vec![zero; len];
        match &self.kind {
            Kind::Mobius(a) => mobius_series(*a, 1, &mut v),
            Kind::Blaschke(a, n) => mobius_series(*a, *n as usize, &mut v),
            Kind::Monomial(k) => {
                if (*k as usize) < len {
                    v[*k as usize] = C::new(1.0, 0.0);
                }
            }
            Kind::Rotation(r) => {
                if len > 1 {
                    v[1] = *r;
                }
            }
            Kind::PhiMn(m, n) => {
                // z · 2^{-1/n} Σ binom(1/n, j) z^{j(m−n)}
                let d = (m - n) as usize;
                let e = 1.0 / *n as f64;
                let mut b = 2f64.powf(-e);
                let mut j = 0usize;
                while 1 + j * d < len {
                    v[1 + j * d] = C::new(b, 0.0);
                    b *= (e - j as f64) / (j as f64 + 1.0);
                    j += 1;
                }
            }
            Kind::Km(g, t) => {
                // z + t Σ binom(γ, j)(−z)^j
                let mut b = 1.0;
                for (j, vj) in v.iter_mut().enumerate() {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    *vj = C::new(t * b * sign, 0.0);
                    b *= (g - j as f64) / (j as f64 + 1.0);
                }
                if len > 1 {
                    v[1] += C::new(1.0, 0.0);
                }
            }
            Kind::Product(fs) => {
                let mut acc: Option<Vec<C>> = None;
                for f in fs {
                    let s = f.taylor(len)?;
                    acc = Some(match acc {
                        None => s,
                        Some(p) => crate::coeffs::truncated_product(&p, &s, len),
                    });
                }
                return acc;
            }
            Kind::Compose(..) => return None,
        }
        Some(v)
    }

    /// Sampled self-map check: max |φ(z)| over a polar lattice with |z| ≤ 0.999.
    pub fn check_self_map(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 1..=40 {
            let r = 0.999 * i as f64 / 40.0;
            worst = worst.max(self.max_modulus(r, 256));
        }
        if worst < 1.0 {
            Ok(worst)
        } else {
            Err(Error::InvalidParameter(format!("{} is not a self-map: |phi| reaches {worst}", self.name())))
        }
    }

    /// Sampled inner check: max over the circle of ||φ(e^{ix})| − 1|.
    pub fn inner_defect(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| (self.eval_boundary(2.0 * PI * (j as f64 + 0.5) / samples as f64).norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn mobius_series(a: C, stride: usize, v: &mut [C]) {
    if v.is_empty() {
        return;
    }
    v[0] = a;
    let mut t = C::new(1.0 - a.norm_sqr(), 0.0);
    let mut k = stride;
    while k < v.len() {
        v[k] = t;
        t *= -a.conj();
        k += stride;
    }
}

/// Parameter composition a ∗ b = (a + b)/(1 + ab), so that T_a ∘ T_b = T_{a∗b}.
pub fn mobius_param_compose(a: f64, b: f64) -> f64 {
    (a + b) / (1.0 + a * b)
}

/// P_{−a}(t) = (1 − a²)/(1 + 2a cos t + a²).
pub fn poisson(a: f64, t: f64) -> f64 {
    (1.0 - a * a) / (1.0 + 2.0 * a * t.cos() + a * a)
}

/// V_a(x) = ∫₀ˣ P_{−a}(t) dt by adaptive quadrature.
pub fn poisson_phase(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    match quad::adaptive(|t| poisson(a, t), 0.0, x, 1e-14, 1e-15, 10_000) {
        Ok(r) => r.value,
        Err(_) => poisson_phase_closed(a, x),
    }
}

/// Closed form of V_a: 2·atan(((1 − a)/(1 + a))·tan(x/2)), continuous on [−π, π].
pub fn poisson_phase_closed(a: f64, x: f64) -> f64 {
    let k = (1.0 - a) / (1.0 + a);
    2.0 * (k * (0.5 * x).sin()).atan2((0.5 * x).cos())
}

/// Orbit u_0 = 0, u_{k+1} = T_a(u_k) together with the gaps 1 − u_k,
/// which are propagated directly to avoid cancellation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Orbit {
    pub a: f64,
    pub u: Vec<f64>,
    pub gap: Vec<f64>,
}

pub fn orbit_t_a(a: f64, steps: usize) -> Result<Orbit> {
    if !(a > 0.0 && a < 1.0) || steps == 0 {
        return Err(Error::InvalidParameter(format!("orbit needs a in (0,1) and steps >= 1, got a={a}")));
    }
    let mut u = vec![0.0];
    let mut gap = vec![1.0];
    for _ in 0..steps {
        let g = *gap.last().expect("nonempty");
        let un = *u.last().expect("nonempty");
        // 1 − T_a(u) = (1 − a)(1 − u)/(1 + a u)
        gap.push((1.0 - a) * g / (1.0 + a * un));
        u.push(mobius_param_compose(a, un));
    }
    Ok(Orbit { a, u, gap })
}

impl Orbit {
    /// Worst slack of ((1−a)/(1+a))(1−u_k) ≤ 1−u_{k+1} ≤ (1−a²)(1−u_k); positive when both hold strictly.
    pub fn gap_bound_slack(&self) -> f64 {
        let a = self.a;
        let mut worst = f64::INFINITY;
        for w in self.gap.windows(2) {
            let lo = (1.0 - a) / (1.0 + a) * w[0];
            let hi = (1.0 - a * a) * w[0];
            worst = worst.min((w[1] - lo) / w[0]).min((hi - w[1]) / w[0]);
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(spec: SymbolSpec) -> Symbol {
        make_symbol(&spec).unwrap()
    }

    #[test]
    fn mobius_basics() {
        let t = s(SymbolSpec::mobius(0.5));
        assert_eq!(t.eval(c(0.0, 0.0)), c(0.5, 0.0));
        assert!(t.eval(c(-0.5, 0.0)).norm() < 1e-16);
        assert_eq!(t.continuation_radius(), 2.0);
        assert!(t.inner_defect(1000) < 1e-12);
    }

    #[test]
    fn phi_mn_power_identity() {
        let f = s(SymbolSpec::PhiMn { m: 7, n: 3 });
        for j in 0..20 {
            let z = C::from_polar(0.05 * j as f64, 0.7 * j as f64);
            let lhs = f.eval(z).powu(3);
            let rhs = (z.powu(3) + z.powu(7)) * 0.5;
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn param_compose() {
        assert!((mobius_param_compose(0.5, 0.5) - 0.8).abs() < 1e-16);
        assert_eq!(mobius_param_compose(0.3, 0.0), 0.3);
        let mut r = 0.1;
        for _ in 0..6 {
            let next = mobius_param_compose(r, r);
            assert!(next > r && next < 1.0);
            r = next;
        }
        assert!(r > 0.9999);
    }

    #[test]
    fn phase_values() {
        for a in [0.2, 0.5, 0.9] {
            assert_eq!(poisson_phase(a, 0.0), 0.0);
            assert!((poisson_phase(a, PI) - PI).abs() < 1e-12);
        }
        let z = C::from_polar(1.0, PI / 2.0);
        let expect = ((z + 0.5) / (C::new(1.0, 0.0) + z * 0.5)).arg();
        assert!((poisson_phase(0.5, PI / 2.0) - expect).abs() < 1e-12);
    }

    #[test]
    fn orbit_values() {
        let o = orbit_t_a(0.5, 2).unwrap();
        assert_eq!(o.u[1], 0.5);
        assert!((o.u[2] - 0.8).abs() < 1e-16);
        let o = orbit_t_a(0.3, 50).unwrap();
        assert!(o.gap_bound_slack() > 0.0);
    }

    #[test]
    fn taylor_matches_eval() {
        let specs = vec![
            SymbolSpec::mobius(0.4),
            SymbolSpec::PhiMn { m: 5, n: 2 },
            SymbolSpec::KrieteMaccluer { gamma: 2.0, t: 0.3 },
            SymbolSpec::Product { factors: vec![SymbolSpec::Monomial { k: 1 }, SymbolSpec::blaschke(0.5, 3)] },
        ];
        let z = c(0.2, -0.15);
        for sp in specs {
            let f = s(sp);
            let t = f.taylor(200).unwrap();
            let sum = t.iter().rev().fold(c(0.0, 0.0), |acc, x| acc * z + x);
            assert!((sum - f.eval(z)).norm() < 1e-13, "{}", f.name());
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!("mobius:a=0.5".parse::<SymbolSpec>().unwrap(), SymbolSpec::mobius(0.5));
        assert!("phi_mn:m=2.5,n=1".parse::<SymbolSpec>().is_err());
        assert!(make_symbol(&SymbolSpec::PhiMn { m: 2, n: 2 }).is_err());
        assert!(make_symbol(&SymbolSpec::KrieteMaccluer { gamma: 2.0, t: 0.6 }).is_err());
    }
}
