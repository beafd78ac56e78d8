//! Finite models of the Picard group of the base curve.
//!
//! * rational: a class is its degree.
//! * elliptic: degree plus an Abel–Jacobi coordinate in `(Z/N)^2`; two
//!   divisors are equivalent when degrees and coordinate sums agree.
//! * generic (genus `b >= 2`): degree plus a 2-torsion offset in
//!   `GF(2)^{2b}`. Only the parity-level structure is modelled, and `h0`
//!   returns the general-position value where it is not forced.

use std::ops::Add;

use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Rational,
    Elliptic,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineBundleClass {
    Rational {
        degree: i64,
    },
    Elliptic {
        degree: i64,
        point: [u64; 2],
        modulus: u64,
    },
    Generic {
        degree: i64,
        label: Gf2Vector,
    },
}

impl LineBundleClass {
    pub fn kind(&self) -> CurveKind {
        match self {
            Self::Rational { .. } => CurveKind::Rational,
            Self::Elliptic { .. } => CurveKind::Elliptic,
            Self::Generic { .. } => CurveKind::Generic,
        }
    }

    pub fn degree(&self) -> i64 {
        match *self {
            Self::Rational { degree }
            | Self::Elliptic { degree, .. }
            | Self::Generic { degree, .. } => degree,
        }
    }

    /// Trivial in `Pic(B)`: degree zero and no torsion part.
    pub fn is_trivial(&self) -> bool {
        match *self {
            Self::Rational { degree } => degree == 0,
            Self::Elliptic { degree, point, .. } => degree == 0 && point == [0, 0],
            Self::Generic { degree, label } => degree == 0 && label.is_zero(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        match (*self, *other) {
            (Self::Rational { degree: d1 }, Self::Rational { degree: d2 }) => {
                Ok(Self::Rational { degree: d1 + d2 })
            }
            (
                Self::Elliptic {
                    degree: d1,
                    point: p1,
                    modulus: n1,
                },
                Self::Elliptic {
                    degree: d2,
                    point: p2,
                    modulus: n2,
                },
            ) if n1 == n2 => Ok(Self::Elliptic {
                degree: d1 + d2,
                point: [(p1[0] + p2[0]) % n1, (p1[1] + p2[1]) % n1],
                modulus: n1,
            }),
            (
                Self::Generic {
                    degree: d1,
                    label: l1,
                },
                Self::Generic {
                    degree: d2,
                    label: l2,
                },
            ) if l1.dim() == l2.dim() => Ok(Self::Generic {
                degree: d1 + d2,
                label: l1 + l2,
            }),
            (a, b) => Err(Error::KindMismatch(format!(
                "cannot tensor {a:?} with {b:?}"
            ))),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Self::Rational { degree } => Self::Rational { degree: -degree },
            Self::Elliptic {
                degree,
                point,
                modulus,
            } => Self::Elliptic {
                degree: -degree,
                point: [
                    (modulus - point[0]) % modulus,
                    (modulus - point[1]) % modulus,
                ],
                modulus,
            },
            Self::Generic { degree, label } => Self::Generic {
                degree: -degree,
                label,
            },
        }
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Self {
        match *self {
            Self::Rational { degree } => Self::Rational { degree: degree * k },
            Self::Elliptic {
                degree,
                point,
                modulus,
            } => {
                let scale = |c: u64| {
                    let m = modulus as i128;
                    ((c as i128 * k as i128).rem_euclid(m)) as u64
                };
                Self::Elliptic {
                    degree: degree * k,
                    point: [scale(point[0]), scale(point[1])],
                    modulus,
                }
            }
            Self::Generic { degree, label } => Self::Generic {
                degree: degree * k,
                label: if k % 2 == 0 {
                    Gf2Vector::zero(label.dim())
                } else {
                    label
                },
            },
        }
    }

    pub fn tensor_all<'a>(
        classes: impl IntoIterator<Item = &'a LineBundleClass>,
        unit: Self,
    ) -> Result<Self> {
        classes.into_iter().try_fold(unit, |acc, c| acc.tensor(c))
    }
}

impl Serialize for LineBundleClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", &self.kind())?;
        map.serialize_entry("degree", &self.degree())?;
        match self {
            Self::Rational { .. } => {}
            Self::Elliptic { point, .. } => map.serialize_entry("point", point)?,
            Self::Generic { label, .. } => map.serialize_entry("label", &label.to_string())?,
        }
        map.end()
    }
}

/// `h^0` of a class, with a flag when the value is the general-position
/// guess rather than forced by the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCount {
    pub value: u64,
    pub generic_position: bool,
}

impl SectionCount {
    pub fn exact(value: u64) -> Self {
        Self {
            value,
            generic_position: false,
        }
    }
}

impl Add for SectionCount {
    type Output = SectionCount;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            generic_position: self.generic_position || rhs.generic_position,
        }
    }
}

/// A named point of the base curve together with its degree-one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedPoint {
    pub name: String,
    pub class: LineBundleClass,
}

impl MarkedPoint {
    pub fn new(name: impl Into<String>, class: LineBundleClass) -> Self {
        Self {
            name: name.into(),
            class,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseCurveModel {
    Rational,
    Elliptic { modulus: u64 },
    Generic { genus: u32 },
}

impl BaseCurveModel {
    pub const DEFAULT_MODULUS: u64 = 240;

    pub fn rational() -> Self {
        Self::Rational
    }

    pub fn elliptic(modulus: u64) -> Result<Self> {
        if modulus == 0 || !modulus.is_multiple_of(4) {
            return Err(Error::InvalidParameter(format!(
                "torsion modulus must be a positive multiple of 4, got {modulus}"
            )));
        }
        Ok(Self::Elliptic { modulus })
    }

    pub fn generic(genus: u32) -> Result<Self> {
        if !(2..=32).contains(&genus) {
            return Err(Error::InvalidParameter(format!(
                "generic base genus must lie in 2..=32, got {genus}"
            )));
        }
        Ok(Self::Generic { genus })
    }

    /// The natural model for a base of genus `b`.
    pub fn for_genus(genus: u32, modulus: u64) -> Result<Self> {
        match genus {
            0 => Ok(Self::Rational),
            1 => Self::elliptic(modulus),
            b => Self::generic(b),
        }
    }

    pub fn kind(&self) -> CurveKind {
        match self {
            Self::Rational => CurveKind::Rational,
            Self::Elliptic { .. } => CurveKind::Elliptic,
            Self::Generic { .. } => CurveKind::Generic,
        }
    }

    pub fn genus(&self) -> u32 {
        match *self {
            Self::Rational => 0,
            Self::Elliptic { .. } => 1,
            Self::Generic { genus } => genus,
        }
    }

    /// Rational and elliptic models compute `h0` exactly.
    pub fn is_concrete(&self) -> bool {
        !matches!(self, Self::Generic { .. })
    }

    pub fn class(&self, degree: i64) -> LineBundleClass {
        match *self {
            Self::Rational => LineBundleClass::Rational { degree },
            Self::Elliptic { modulus } => LineBundleClass::Elliptic {
                degree,
                point: [0, 0],
                modulus,
            },
            Self::Generic { genus } => LineBundleClass::Generic {
                degree,
                label: Gf2Vector::zero(2 * genus),
            },
        }
    }

    pub fn trivial_class(&self) -> LineBundleClass {
        self.class(0)
    }

    pub fn canonical_class(&self) -> LineBundleClass {
        self.class(2 * self.genus() as i64 - 2)
    }

    /// The class of a point with Abel–Jacobi coordinates `(x, y)`.
    pub fn elliptic_point(&self, x: u64, y: u64) -> Result<LineBundleClass> {
        match *self {
            Self::Elliptic { modulus } => Ok(LineBundleClass::Elliptic {
                degree: 1,
                point: [x % modulus, y % modulus],
                modulus,
            }),
            _ => Err(Error::KindMismatch(
                "coordinates only exist on the elliptic model".into(),
            )),
        }
    }

    /// The class of a point on a rational or generic base, where all points
    /// share one class at the modelled level of detail.
    pub fn point(&self) -> Result<LineBundleClass> {
        match self {
            Self::Elliptic { .. } => Err(Error::KindMismatch(
                "elliptic points need coordinates".into(),
            )),
            _ => Ok(self.class(1)),
        }
    }

    /// A point with both coordinates even, so that sums of such points stay
    /// halvable in the model.
    pub fn sample_even_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<LineBundleClass> {
        match *self {
            Self::Elliptic { modulus } => {
                let half = modulus / 2;
                self.elliptic_point(2 * rng.gen_range(0..half), 2 * rng.gen_range(0..half))
            }
            _ => self.point(),
        }
    }

    pub fn owns(&self, class: &LineBundleClass) -> bool {
        match (*self, *class) {
            (Self::Rational, LineBundleClass::Rational { .. }) => true,
            (Self::Elliptic { modulus }, LineBundleClass::Elliptic { modulus: m, .. }) => {
                modulus == m
            }
            (Self::Generic { genus }, LineBundleClass::Generic { label, .. }) => {
                label.dim() == 2 * genus
            }
            _ => false,
        }
    }

    fn check(&self, class: &LineBundleClass) -> Result<()> {
        if self.owns(class) {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "{class:?} does not belong to {self:?}"
            )))
        }
    }

    pub fn of_divisor<'a>(
        &self,
        points: impl IntoIterator<Item = &'a LineBundleClass>,
    ) -> Result<LineBundleClass> {
        let mut total = self.trivial_class();
        for p in points {
            self.check(p)?;
            if p.degree() != 1 {
                return Err(Error::InvalidParameter(format!(
                    "divisor points must have degree 1, got {p:?}"
                )));
            }
            total = total.tensor(p)?;
        }
        Ok(total)
    }

    pub fn h0(&self, class: &LineBundleClass) -> Result<SectionCount> {
        self.check(class)?;
        let degree = class.degree();
        let count = match *class {
            LineBundleClass::Rational { .. } => SectionCount::exact((degree + 1).max(0) as u64),
            LineBundleClass::Elliptic { point, .. } => SectionCount::exact(match degree {
                d if d < 0 => 0,
                0 => u64::from(point == [0, 0]),
                d => d as u64,
            }),
            LineBundleClass::Generic { .. } => {
                let b = self.genus() as i64;
                if degree < 0 {
                    SectionCount::exact(0)
                } else if degree > 2 * b - 2 {
                    SectionCount::exact((degree - b + 1) as u64)
                } else {
                    SectionCount {
                        value: (degree - b + 1).max(0) as u64,
                        generic_position: true,
                    }
                }
            }
        };
        Ok(count)
    }

    /// Every class whose square is `class`, in a fixed order.
    pub fn sqrt_classes(&self, class: &LineBundleClass) -> Result<Vec<LineBundleClass>> {
        self.check(class)?;
        let degree = class.degree();
        if degree % 2 != 0 {
            return Err(Error::OddDegree { degree });
        }
        let half = degree / 2;
        match *class {
            LineBundleClass::Rational { .. } => {
                Ok(vec![LineBundleClass::Rational { degree: half }])
            }
            LineBundleClass::Elliptic {
                point: [x, y],
                modulus,
                ..
            } => {
                if x % 2 != 0 || y % 2 != 0 {
                    return Err(Error::NotHalvable(format!(
                        "point ({x}, {y}) has an odd coordinate mod {modulus}"
                    )));
                }
                let shift = modulus / 2;
                let roots = [(0, 0), (1, 0), (0, 1), (1, 1)]
                    .into_iter()
                    .map(|(e, d)| LineBundleClass::Elliptic {
                        degree: half,
                        point: [(x / 2 + e * shift) % modulus, (y / 2 + d * shift) % modulus],
                        modulus,
                    })
                    .collect();
                Ok(roots)
            }
            LineBundleClass::Generic { label, .. } => {
                if !label.is_zero() {
                    return Err(Error::NotHalvable(format!(
                        "generic class carries a 2-torsion offset {label}"
                    )));
                }
                let dim = label.dim();
                let roots = (0..1u64 << dim)
                    .map(|bits| LineBundleClass::Generic {
                        degree: half,
                        label: Gf2Vector::from_raw(bits, dim),
                    })
                    .collect();
                Ok(roots)
            }
        }
    }
}
