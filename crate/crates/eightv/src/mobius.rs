//! Möbius transformations z ↦ (pz + q)/(rz + s) with entries in Q(ζ₈).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::Cyclo8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobiusError {
    #[error("singular matrix: ps - qr = 0")]
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtComplex {
    Finite(Cyclo8),
    Infinity,
}

impl ExtComplex {
    pub fn int(n: i64) -> Self {
        ExtComplex::Finite(Cyclo8::from_int(n))
    }

    pub fn unit_modulus(&self) -> bool {
        matches!(self, ExtComplex::Finite(z) if z.unit_modulus())
    }
}

impl From<Cyclo8> for ExtComplex {
    fn from(z: Cyclo8) -> Self {
        ExtComplex::Finite(z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mobius {
    p: Cyclo8,
    q: Cyclo8,
    r: Cyclo8,
    s: Cyclo8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedPoints {
    All,
    Points(Vec<ExtComplex>),
    /// The fixed points lie outside Q(ζ₈); `count` is 1 or 2.
    NotInField { count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<ExtComplex>,
    pub distinct: bool,
    /// Smallest j ≥ 1 with mʲ(z₀) = z₀ among the computed iterates.
    pub period: Option<usize>,
}

impl Mobius {
    pub fn new(p: Cyclo8, q: Cyclo8, r: Cyclo8, s: Cyclo8) -> Result<Self, MobiusError> {
        let m = Mobius { p, q, r, s };
        if m.det().is_zero() {
            return Err(MobiusError::Singular);
        }
        Ok(m)
    }

    pub fn from_ints(v: [[i64; 2]; 2]) -> Result<Self, MobiusError> {
        Mobius::new(
            Cyclo8::from_int(v[0][0]),
            Cyclo8::from_int(v[0][1]),
            Cyclo8::from_int(v[1][0]),
            Cyclo8::from_int(v[1][1]),
        )
    }

    pub fn identity() -> Self {
        Mobius { p: Cyclo8::one(), q: Cyclo8::zero(), r: Cyclo8::zero(), s: Cyclo8::one() }
    }

    /// e^{iθ}(z + λ)/(1 + λ̄z).
    pub fn circle_map(lambda: &Cyclo8, phase: &Cyclo8) -> Result<Self, MobiusError> {
        Mobius::new(phase.clone(), phase * lambda, lambda.conj(), Cyclo8::one())
    }

    pub fn entries(&self) -> [&Cyclo8; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    pub fn det(&self) -> Cyclo8 {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }

    pub fn trace(&self) -> Cyclo8 {
        &self.p + &self.s
    }

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            p: &(&self.p * &o.p) + &(&self.q * &o.r),
            q: &(&self.p * &o.q) + &(&self.q * &o.s),
            r: &(&self.r * &o.p) + &(&self.s * &o.r),
            s: &(&self.r * &o.q) + &(&self.s * &o.s),
        }
    }

    pub fn pow(&self, mut e: u32) -> Mobius {
        let mut base = self.clone();
        let mut acc = Mobius::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        self.q.is_zero() && self.r.is_zero() && self.p == self.s
    }

    pub fn apply(&self, z: &ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => {
                if self.r.is_zero() {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.p.div(&self.r).expect("nonzero"))
                }
            }
            ExtComplex::Finite(z) => {
                let num = &(&self.p * z) + &self.q;
                let den = &(&self.r * z) + &self.s;
                match num.div(&den) {
                    Ok(v) => ExtComplex::Finite(v),
                    Err(_) => ExtComplex::Infinity,
                }
            }
        }
    }

    /// (λ, e^{iθ}) when the map is projectively e^{iθ}(z + λ)/(1 + λ̄z) with |λ| ≠ 1.
    pub fn circle_form(&self) -> Option<(Cyclo8, Cyclo8)> {
        if self.s.is_zero() {
            return None;
        }
        let phase = self.p.div(&self.s).ok()?;
        if !phase.unit_modulus() {
            return None;
        }
        let lambda = self.q.div(&self.p).ok()?;
        let r = self.r.div(&self.s).ok()?;
        if r != lambda.conj() || (&lambda * &lambda.conj()).is_one() {
            return None;
        }
        Some((lambda, phase))
    }

    /// Roots of λ² − tr·λ + det when they lie in Q(ζ₈), larger real part first
    /// for real pairs and otherwise in the order (tr ± √disc)/2.
    pub fn eigenvalues(&self) -> Option<[Cyclo8; 2]> {
        let tr = self.trace();
        let disc = &(&tr * &tr) - &(&Cyclo8::from_int(4) * &self.det());
        let root = disc.sqrt()?;
        let half = Cyclo8::from_int(2).inv().expect("nonzero");
        let (e1, e2) = (&(&tr + &root) * &half, &(&tr - &root) * &half);
        match (e1.as_rational(), e2.as_rational()) {
            (Some(r1), Some(r2)) if r1 < r2 => Some([e2, e1]),
            _ => Some([e1, e2]),
        }
    }

    /// Smallest n with mⁿ a scalar matrix, decided from τ = tr²/det.
    /// With r the eigenvalue ratio, τ = r + 2 + 1/r, and the roots of unity
    /// whose r + 1/r lies in Q(ζ₈) have order 1, 2, 3, 4, 6 or 8.
    pub fn projective_order(&self) -> Order {
        if self.is_scalar() {
            return Order::Finite(1);
        }
        let tr = self.trace();
        let tau = (&tr * &tr).div(&self.det()).expect("invertible");
        let two = Cyclo8::from_int(2);
        let table = [
            (Cyclo8::from_int(0), 2),
            (Cyclo8::from_int(1), 3),
            (Cyclo8::from_int(2), 4),
            (Cyclo8::from_int(3), 6),
            (&two + &Cyclo8::sqrt2(), 8),
            (&two - &Cyclo8::sqrt2(), 8),
        ];
        // τ = 4 without being scalar is parabolic.
        table.into_iter().find(|(t, _)| *t == tau).map_or(Order::Infinite, |(_, n)| Order::Finite(n))
    }

    pub fn orbit(&self, z0: &ExtComplex, k: usize) -> Orbit {
        let mut points = Vec::with_capacity(k);
        let mut cur = z0.clone();
        for _ in 0..k {
            points.push(cur.clone());
            cur = self.apply(&cur);
        }
        let mut distinct = true;
        'outer: for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    distinct = false;
                    break 'outer;
                }
            }
        }
        let period = (1..points.len()).find(|&j| points[j] == *z0);
        Orbit { points, distinct, period }
    }

    /// Solutions of r z² + (s − p) z − q = 0 on the extended plane.
    pub fn fixed_points(&self) -> FixedPoints {
        if self.is_scalar() {
            return FixedPoints::All;
        }
        let sp = &self.s - &self.p;
        if self.r.is_zero() {
            // ∞ is fixed; a finite one exists when s ≠ p.
            if sp.is_zero() {
                return FixedPoints::Points(vec![ExtComplex::Infinity]);
            }
            let z = (-&self.q).div(&sp).expect("nonzero");
            return FixedPoints::Points(vec![ExtComplex::Infinity, ExtComplex::Finite(z)]);
        }
        let disc = &(&sp * &sp) + &(&Cyclo8::from_int(4) * &(&self.q * &self.r));
        let two_r = &Cyclo8::from_int(2) * &self.r;
        let minus_sp = -&sp;
        if disc.is_zero() {
            return FixedPoints::Points(vec![ExtComplex::Finite(minus_sp.div(&two_r).expect("nonzero"))]);
        }
        match disc.sqrt() {
            Some(root) => FixedPoints::Points(vec![
                ExtComplex::Finite((&minus_sp + &root).div(&two_r).expect("nonzero")),
                ExtComplex::Finite((&minus_sp - &root).div(&two_r).expect("nonzero")),
            ]),
            None => FixedPoints::NotInField { count: 2 },
        }
    }
}
