//! Characters given by exact rotations and the kernel groups of
//! representations of `C[M]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::GroupAlgElem;
use crate::error::{Error, Result};
use crate::modules::{hom_kernel, intersect_subgroups, IntMatrix, ModuleElem, ModulePresentation, Quotient, SubmoduleDesc};

/// `chi(m) = exp(2 pi i sum_j theta_j m_j)` with rational angles taken mod 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    ambient: ModulePresentation,
    angles: Vec<BigRational>,
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl Character {
    /// Each angle on a torsion coordinate of order `d` must satisfy
    /// `d * theta in Z`, otherwise the map is not well defined.
    pub fn new(ambient: &ModulePresentation, angles: Vec<BigRational>) -> Result<Self> {
        if angles.len() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), got: angles.len() });
        }
        for (i, a) in angles.iter().enumerate() {
            let d = ambient.modulus(i);
            if d != 0 && !(a * BigRational::from_integer(BigInt::from(d))).is_integer() {
                return Err(Error::InvalidInput(format!("angle {a} is not a multiple of 1/{d}")));
            }
        }
        Ok(Character { ambient: ambient.clone(), angles: angles.iter().map(frac_part).collect() })
    }

    /// Evaluation of `C[Z]` at `exp(2 pi i p / q)`.
    pub fn evaluation_at_rotation(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let z = ModulePresentation::free(1);
        Character::new(&z, vec![BigRational::new(p.into(), q.into())])
    }

    pub fn ambient(&self) -> &ModulePresentation {
        &self.ambient
    }

    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }

    /// Common denominator of the angles.
    pub fn period(&self) -> BigInt {
        self.angles.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }

    /// `chi(m)` as a rotation in `[0, 1)`.
    pub fn rotation(&self, m: &ModuleElem) -> Result<BigRational> {
        self.ambient.check(m)?;
        let s = self.angles.iter().zip(m.coords()).fold(BigRational::zero(), |acc, (a, &x)| acc + a * BigRational::from_integer(x.into()));
        Ok(frac_part(&s))
    }

    /// The field `Q(zeta_L)` with `L = lcm(period, 4)` holding all values.
    pub fn value_field(&self) -> Result<Arc<CyclotomicField>> {
        let l = self.period().lcm(&BigInt::from(4));
        let l: u64 = l.try_into().map_err(|_| Error::Overflow)?;
        Ok(CyclotomicField::new(l))
    }

    /// `chi(a) = sum a(m) chi(m)`, exactly.
    pub fn evaluate(&self, a: &GroupAlgElem) -> Result<Cyclotomic> {
        if a.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let field = self.value_field()?;
        let mut acc = Cyclotomic::zero(&field);
        for (m, c) in a.terms() {
            let r = self.rotation(m)?;
            let v = Cyclotomic::rotation(&field, r.numer(), r.denom()).expect("period divides L");
            acc = acc.add(&v.mul(&Cyclotomic::from_coeff(&field, c)));
        }
        Ok(acc)
    }

    /// `{m : chi(m) = 1}`.
    pub fn kernel_group(&self) -> Result<SubmoduleDesc> {
        let q = self.period();
        let row: Vec<BigInt> = self.angles.iter().map(|a| (a * BigRational::from_integer(q.clone())).to_integer()).collect();
        let p = IntMatrix::from_rows(&[row]);
        hom_kernel(&self.ambient, &p, &[q])
    }
}

/// A representation whose kernel group can be computed exactly.
#[derive(Clone, Debug)]
pub enum Representation {
    Character(Character),
    Quotient(Quotient),
}

impl Representation {
    pub fn ambient(&self) -> &ModulePresentation {
        match self {
            Representation::Character(c) => c.ambient(),
            Representation::Quotient(q) => q.source(),
        }
    }

    /// `{g : pi(U^g) = 1}`.
    pub fn kernel_group(&self) -> Result<SubmoduleDesc> {
        match self {
            Representation::Character(c) => c.kernel_group(),
            Representation::Quotient(q) => hom_kernel(q.source(), q.projection_matrix(), &q.target().moduli()),
        }
    }

    /// Whether `pi(U^g)` is the identity.
    pub fn trivializes(&self, g: &ModuleElem) -> Result<bool> {
        match self {
            Representation::Character(c) => Ok(c.rotation(g)?.is_zero()),
            Representation::Quotient(q) => Ok(q.project(g)?.is_zero()),
        }
    }
}

/// Intersection of the kernel groups of a nonempty family.
pub fn intersect_kernel_groups(reps: &[Representation]) -> Result<SubmoduleDesc> {
    let (first, rest) = reps.split_first().ok_or(Error::EmptyList)?;
    let mut acc = first.kernel_group()?;
    for r in rest {
        if r.ambient() != acc.ambient() {
            return Err(Error::AmbientMismatch);
        }
        acc = intersect_subgroups(&acc, &r.kernel_group()?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;
    use crate::modules::quotient_module;

    #[test]
    fn roots_of_unity_kernels() {
        let z = ModulePresentation::free(1);
        for m in 1..=8 {
            let k = Character::evaluation_at_rotation(1, m).unwrap().kernel_group().unwrap();
            assert_eq!(k, SubmoduleDesc::from_coords(&z, &[vec![m]]).unwrap());
        }
        let k = Character::evaluation_at_rotation(3, 12).unwrap().kernel_group().unwrap();
        assert_eq!(k, SubmoduleDesc::from_coords(&z, &[vec![4]]).unwrap());
    }

    #[test]
    fn evaluation_at_i() {
        let chi = Character::evaluation_at_rotation(1, 4).unwrap();
        let z = ModulePresentation::free(1);
        let a = GroupAlgElem::from_terms(&z, [(vec![1], Coeff::one()), (vec![2], Coeff::int(3))]).unwrap();
        // i + 3 i^2 = -3 + i
        assert_eq!(chi.evaluate(&a).unwrap().as_gaussian(), Some(Coeff::gaussian(-3, 1)));
    }

    #[test]
    fn quotient_kernel_is_the_subgroup() {
        let m12 = ModulePresentation::cyclic(12).unwrap();
        for g in 0..12 {
            let n = SubmoduleDesc::from_coords(&m12, &[vec![g]]).unwrap();
            let q = quotient_module(&m12, &n, false).unwrap();
            assert_eq!(Representation::Quotient(q).kernel_group().unwrap(), n);
        }
    }

    #[test]
    fn intersections() {
        let reps = [
            Representation::Character(Character::evaluation_at_rotation(1, 4).unwrap()),
            Representation::Character(Character::evaluation_at_rotation(1, 6).unwrap()),
        ];
        let z = ModulePresentation::free(1);
        assert_eq!(intersect_kernel_groups(&reps).unwrap(), SubmoduleDesc::from_coords(&z, &[vec![12]]).unwrap());
        assert_eq!(intersect_kernel_groups(&reps[..1]).unwrap(), reps[0].kernel_group().unwrap());
        assert_eq!(intersect_kernel_groups(&[]).unwrap_err(), Error::EmptyList);
    }

    #[test]
    fn ill_defined_character_rejected() {
        let m = ModulePresentation::cyclic(6).unwrap();
        assert!(Character::new(&m, vec![BigRational::new(1.into(), 4.into())]).is_err());
        assert!(Character::new(&m, vec![BigRational::new(1.into(), 3.into())]).is_ok());
    }
}
