//! Classification of level-36 images against the four exceptional groups,
//! and the Serre-curve obstruction test.

use std::fmt;
use std::sync::OnceLock;

use super::named::{h4p, h4pp, h6p, h9p, Theta};
use crate::error::{Error, Result};
use crate::groups::{closure, commutator_of, find_conjugator_into, gl2, FinGroup};
use crate::modring::{gl2_generators, gl2_order, Mat2};
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mod36Class {
    XPrime4,
    XDoublePrime4,
    XPrime9,
    XPrime6,
}

impl Mod36Class {
    pub const ALL: [Mod36Class; 4] = [
        Mod36Class::XPrime4,
        Mod36Class::XDoublePrime4,
        Mod36Class::XPrime9,
        Mod36Class::XPrime6,
    ];

    pub fn level(self) -> u32 {
        match self {
            Mod36Class::XPrime4 | Mod36Class::XDoublePrime4 => 4,
            Mod36Class::XPrime9 => 9,
            Mod36Class::XPrime6 => 6,
        }
    }
}

impl fmt::Display for Mod36Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mod36Class::XPrime4 => "X'(4)",
            Mod36Class::XDoublePrime4 => "X''(4)",
            Mod36Class::XPrime9 => "X'(9)",
            Mod36Class::XPrime6 => "X'(6)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: Option<Mod36Class>,
    /// `g` mod 36 with `g H g^{-1}` inside the class representative.
    pub witness: Option<Mat2>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.class, self.witness) {
            (Some(c), Some(w)) => write!(f, "class={c} witness={w}"),
            _ => write!(f, "class=none"),
        }
    }
}

/// Class representatives at their own levels with the ambient GL2 groups.
/// Each level-36 representative is a full preimage, so containment of a
/// conjugate can be decided after reducing to the representative's level.
pub struct Classifier {
    reps: Vec<(Mod36Class, FinGroup<Mat2>, FinGroup<Mat2>)>,
    exec: Exec,
}

impl Classifier {
    pub fn new() -> Result<Self> {
        Self::with_exec(Exec::default())
    }

    pub fn with_exec(exec: Exec) -> Result<Self> {
        let theta = Theta::new()?;
        let reps = vec![
            (Mod36Class::XPrime4, h4p(), gl2(4)),
            (Mod36Class::XDoublePrime4, h4pp(), gl2(4)),
            (Mod36Class::XPrime9, h9p(), gl2(9)),
            (Mod36Class::XPrime6, h6p(&theta), gl2(6)),
        ];
        Ok(Classifier { reps, exec })
    }

    pub fn representative(&self, class: Mod36Class) -> &FinGroup<Mat2> {
        &self.reps.iter().find(|r| r.0 == class).expect("all classes present").1
    }

    /// First class (in the order X'(4), X''(4), X'(9), X'(6)) whose
    /// representative is proper and contains a conjugate of `<gens>`.
    pub fn classify(&self, gens: &[Mat2]) -> Result<Classification> {
        check_level(gens, 36)?;
        for (class, rep, ambient) in &self.reps {
            // a representative equal to its ambient group contains everything
            if rep.order() == ambient.order() {
                continue;
            }
            if let Some(w) = self.conjugator_at_level(gens, rep, ambient)? {
                return Ok(Classification {
                    class: Some(*class),
                    witness: Some(w.lift(36)?),
                });
            }
        }
        Ok(Classification {
            class: None,
            witness: None,
        })
    }

    /// Whether `<gens>` lies in a conjugate of the representative of `class`.
    pub fn contained_in(&self, gens: &[Mat2], class: Mod36Class) -> Result<Option<Mat2>> {
        check_level(gens, 36)?;
        let (_, rep, ambient) = self.reps.iter().find(|r| r.0 == class).expect("all classes present");
        self.conjugator_at_level(gens, rep, ambient)?
            .map(|w| w.lift(36))
            .transpose()
    }

    fn conjugator_at_level(
        &self,
        gens: &[Mat2],
        rep: &FinGroup<Mat2>,
        ambient: &FinGroup<Mat2>,
    ) -> Result<Option<Mat2>> {
        let d = rep.modulus();
        let reduced = gens.iter().map(|g| g.project(d)).collect::<Result<Vec<_>>>()?;
        Ok(find_conjugator_into(&reduced, rep, ambient, self.exec))
    }
}

fn check_level(gens: &[Mat2], n: u32) -> Result<()> {
    if let Some(g) = gens.iter().find(|g| g.modulus() != n) {
        return Err(Error::input(format!("{g} is not a level-{n} matrix")));
    }
    if let Some(g) = gens.iter().find(|g| !g.is_invertible()) {
        return Err(Error::input(format!("{g} is not invertible mod {n}")));
    }
    Ok(())
}

/// `classify` with a freshly built [`Classifier`].
pub fn classify_mod36(gens: &[Mat2]) -> Result<Classification> {
    Classifier::new()?.classify(gens)
}

/// `|[GL2(Z/36Z), GL2(Z/36Z)]|`, computed once by closure.
pub fn full_commutator_order_36() -> usize {
    static ORDER: OnceLock<usize> = OnceLock::new();
    *ORDER.get_or_init(|| commutator_of(Mat2::identity(36), &gl2_generators(36)).order())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub obstructed: bool,
    pub reason: String,
}

/// Images of Galois at the primes 2 through 7 and at level 36, each given
/// by generators.
#[derive(Clone, Debug, Default)]
pub struct ImageData {
    pub mod_l: Vec<(u32, Vec<Mat2>)>,
    pub mod36: Vec<Mat2>,
}

/// True when some supplied mod-l image with l >= 5 is proper, or when the
/// level-36 commutator subgroup is proper.
pub fn is_serre_obstructed(images: &ImageData) -> Result<Obstruction> {
    let mut primes: Vec<&(u32, Vec<Mat2>)> = images.mod_l.iter().collect();
    primes.sort_by_key(|x| x.0);
    for (l, gens) in primes {
        let order = closure(gens, *l)?.order();
        if *l >= 5 && (order as u64) < gl2_order(*l) {
            return Ok(Obstruction {
                obstructed: true,
                reason: format!("proper mod-{l} image"),
            });
        }
    }
    check_level(&images.mod36, 36)?;
    let comm = commutator_of(Mat2::identity(36), &images.mod36).order();
    let full = full_commutator_order_36();
    if comm < full {
        return Ok(Obstruction {
            obstructed: true,
            reason: format!("proper mod-36 commutator ({comm} < {full})"),
        });
    }
    Ok(Obstruction {
        obstructed: false,
        reason: "no obstruction".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::preimage;

    #[test]
    fn full_group_is_unclassified() {
        let c = Classifier::new().unwrap();
        let r = c.classify(&gl2_generators(36)).unwrap();
        assert_eq!(r.class, None);
        assert_eq!(r.to_string(), "class=none");
    }

    #[test]
    fn own_preimage_classifies_with_identity() {
        let c = Classifier::new().unwrap();
        let h = preimage(c.representative(Mod36Class::XPrime6), 36).unwrap();
        let r = c.classify(h.generators()).unwrap();
        assert_eq!(r.class, Some(Mod36Class::XPrime6));
        assert_eq!(r.witness, Some(Mat2::identity(36)));
    }

    #[test]
    fn full_commutator_order() {
        let by_parts = gl2(4).commutator_subgroup().order() * gl2(9).commutator_subgroup().order();
        assert_eq!(full_commutator_order_36(), by_parts);
    }

    #[test]
    fn wrong_level_is_rejected() {
        assert!(classify_mod36(&[Mat2::identity(6)]).is_err());
    }
}
