use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::combin::prime_power;

/// Abstract description of a finite ring.
///
/// `Display` prints the canonical textual form, which the `ringline` parser
/// reads back to an equal value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/m`.
    Zmod(u64),
    /// `GF(q)`.
    GaloisField(u64),
    /// `base[T]/(T^h)`.
    DualNumbers {
        /// Coefficient ring.
        base: Box<RingSpec>,
        /// Nilpotency index of `T`.
        h: u32,
    },
    /// `base[T;σ]/(T^h)` with `Tx = σ(x)T` and `σ` the Frobenius map raised to
    /// `frobenius_power`; `base` must be a proper extension field.
    TwistedDual {
        /// Coefficient field.
        base: Box<RingSpec>,
        /// Nilpotency index of `T`.
        h: u32,
        /// Exponent `j` of `σ = Frob^j`.
        frobenius_power: u32,
    },
    /// `m × m` matrices over `base`.
    MatrixRing {
        /// Matrix size.
        m: u32,
        /// Entry ring.
        base: Box<RingSpec>,
    },
    /// Direct product.
    Product(Vec<RingSpec>),
    /// A ring read from a table file.
    Table(String),
    /// Exterior algebra of an `n`-dimensional free module over `base`.
    Exterior {
        /// Coefficient ring.
        base: Box<RingSpec>,
        /// Number of generators.
        n: u32,
    },
}

/// A ring description that violates a parameter constraint.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    /// `Z/m` with `m < 2`.
    #[error("Z/{0}: the modulus must be at least 2")]
    ZmodTooSmall(u64),
    /// `GF(q)` with `q` not a prime power.
    #[error("GF({0}): {0} is not a prime power")]
    NotPrimePower(u64),
    /// Dual numbers with `h < 2`.
    #[error("dual numbers need h >= 2, got h={0}")]
    DualDegree(u32),
    /// A twist that acts as the identity.
    #[error("frob={frob} induces the identity on GF({q})")]
    IdentityTwist {
        /// The twist exponent.
        frob: u32,
        /// The coefficient field order.
        q: u64,
    },
    /// A twist over a base that is not a Galois field.
    #[error("a twisted dual needs a Galois field base, got {0}")]
    TwistNeedsGaloisField(String),
    /// `mat(0, _)`.
    #[error("matrix size must be at least 1")]
    MatrixSize,
    /// `ext(_, n=0)`.
    #[error("exterior algebra needs n >= 1")]
    ExteriorRank,
    /// `prod()` with no factors.
    #[error("a product needs at least one factor")]
    EmptyProduct,
}

impl RingSpec {
    /// Checks every parameter constraint in the tree.
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            RingSpec::Zmod(m) if *m < 2 => Err(SpecError::ZmodTooSmall(*m)),
            RingSpec::Zmod(_) | RingSpec::Table(_) => Ok(()),
            RingSpec::GaloisField(q) => match prime_power(*q) {
                Some(_) => Ok(()),
                None => Err(SpecError::NotPrimePower(*q)),
            },
            RingSpec::DualNumbers { base, h } => {
                if *h < 2 {
                    return Err(SpecError::DualDegree(*h));
                }
                base.validate()
            }
            RingSpec::TwistedDual {
                base,
                h,
                frobenius_power,
            } => {
                if *h < 2 {
                    return Err(SpecError::DualDegree(*h));
                }
                let RingSpec::GaloisField(q) = **base else {
                    return Err(SpecError::TwistNeedsGaloisField(base.to_string()));
                };
                let (_, e) = prime_power(q).ok_or(SpecError::NotPrimePower(q))?;
                if *frobenius_power % e == 0 {
                    return Err(SpecError::IdentityTwist {
                        frob: *frobenius_power,
                        q,
                    });
                }
                Ok(())
            }
            RingSpec::MatrixRing { m, base } => {
                if *m < 1 {
                    return Err(SpecError::MatrixSize);
                }
                base.validate()
            }
            RingSpec::Product(factors) => {
                if factors.is_empty() {
                    return Err(SpecError::EmptyProduct);
                }
                factors.iter().try_for_each(RingSpec::validate)
            }
            RingSpec::Exterior { base, n } => {
                if *n < 1 {
                    return Err(SpecError::ExteriorRank);
                }
                base.validate()
            }
        }
    }

    /// The number of elements, when it is known without loading tables.
    /// Saturates at `u128::MAX`.
    pub fn predicted_order(&self) -> Option<u128> {
        let pow = |b: u128, e: u128| -> u128 {
            let mut acc: u128 = 1;
            for _ in 0..e {
                acc = acc.saturating_mul(b);
            }
            acc
        };
        Some(match self {
            RingSpec::Zmod(m) | RingSpec::GaloisField(m) => *m as u128,
            RingSpec::DualNumbers { base, h } | RingSpec::TwistedDual { base, h, .. } => {
                pow(base.predicted_order()?, *h as u128)
            }
            RingSpec::MatrixRing { m, base } => pow(base.predicted_order()?, (*m as u128) * (*m as u128)),
            RingSpec::Product(fs) => {
                let mut acc: u128 = 1;
                for f in fs {
                    acc = acc.saturating_mul(f.predicted_order()?);
                }
                acc
            }
            RingSpec::Table(_) => return None,
            RingSpec::Exterior { base, n } => {
                pow(base.predicted_order()?, if *n >= 128 { u128::MAX } else { 1u128 << n })
            }
        })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "Z/{m}"),
            RingSpec::GaloisField(q) => write!(f, "GF({q})"),
            RingSpec::DualNumbers { base, h } => write!(f, "dual({base}, h={h})"),
            RingSpec::TwistedDual {
                base,
                h,
                frobenius_power,
            } => write!(f, "dual({base}, h={h}, frob={frobenius_power})"),
            RingSpec::MatrixRing { m, base } => write!(f, "mat({m}, {base})"),
            RingSpec::Product(fs) => {
                f.write_str("prod(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
            RingSpec::Table(path) => write!(f, "table({path})"),
            RingSpec::Exterior { base, n } => write!(f, "ext({base}, n={n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Box<RingSpec> {
        Box::new(RingSpec::GaloisField(q))
    }

    #[test]
    fn display_forms() {
        let s = RingSpec::Product(alloc::vec![
            RingSpec::Zmod(6),
            RingSpec::TwistedDual {
                base: gf(4),
                h: 2,
                frobenius_power: 1
            },
            RingSpec::Exterior { base: gf(2), n: 2 },
        ]);
        assert_eq!(s.to_string(), "prod(Z/6, dual(GF(4), h=2, frob=1), ext(GF(2), n=2))");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(RingSpec::Zmod(1).validate(), Err(SpecError::ZmodTooSmall(1)));
        assert_eq!(RingSpec::GaloisField(6).validate(), Err(SpecError::NotPrimePower(6)));
        assert_eq!(
            RingSpec::DualNumbers { base: gf(2), h: 1 }.validate(),
            Err(SpecError::DualDegree(1))
        );
        assert_eq!(
            RingSpec::TwistedDual {
                base: gf(4),
                h: 2,
                frobenius_power: 2
            }
            .validate(),
            Err(SpecError::IdentityTwist { frob: 2, q: 4 })
        );
        assert!(matches!(
            RingSpec::TwistedDual {
                base: Box::new(RingSpec::Zmod(4)),
                h: 2,
                frobenius_power: 1
            }
            .validate(),
            Err(SpecError::TwistNeedsGaloisField(_))
        ));
        assert_eq!(RingSpec::Product(Vec::new()).validate(), Err(SpecError::EmptyProduct));
    }

    #[test]
    fn predicted_orders() {
        assert_eq!(RingSpec::MatrixRing { m: 2, base: gf(2) }.predicted_order(), Some(16));
        assert_eq!(RingSpec::Exterior { base: gf(2), n: 2 }.predicted_order(), Some(16));
        assert_eq!(RingSpec::Table("x".to_string()).predicted_order(), None);
    }
}
