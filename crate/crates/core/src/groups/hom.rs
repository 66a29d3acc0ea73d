//! Homomorphisms from concrete groups, and quotients.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{CayleyTable, FinGroup, GroupElement};
use crate::error::{Error, Result};

/// Walks the Cayley graph of `domain` along its generators, assigning
/// `f(x g) = f(x) f(g)` and rejecting any inconsistency. A consistent walk
/// proves the assignment extends to a homomorphism.
fn extend_along_generators<E: GroupElement, F: Clone + Eq>(
    domain: &FinGroup<E>,
    identity_image: F,
    gen_images: &[F],
    mul: impl Fn(&F, &F) -> F,
) -> Result<HashMap<E, F>> {
    let gens = domain.generators();
    if gens.len() != gen_images.len() {
        return Err(Error::input(format!(
            "{} generator images for {} generators",
            gen_images.len(),
            gens.len()
        )));
    }
    let mut map: HashMap<E, F> = HashMap::with_capacity(domain.order());
    map.insert(domain.identity().clone(), identity_image);
    let mut queue = vec![domain.identity().clone()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i].clone();
        let fx = map[&x].clone();
        for (g, fg) in gens.iter().zip(gen_images) {
            let y = x.compose(g);
            let fy = mul(&fx, fg);
            match map.get(&y) {
                None => {
                    map.insert(y.clone(), fy);
                    queue.push(y);
                }
                Some(prev) if *prev != fy => {
                    return Err(Error::input(format!(
                        "generator images do not define a homomorphism (conflict at {y:?})"
                    )));
                }
                Some(_) => {}
            }
        }
        i += 1;
    }
    Ok(map)
}

/// A homomorphism between concrete groups, stored as a full element map.
#[derive(Clone, Debug)]
pub struct GroupHom<E, F> {
    domain: FinGroup<E>,
    codomain: FinGroup<F>,
    images: HashMap<E, F>,
}

impl<E: GroupElement, F: GroupElement> GroupHom<E, F> {
    /// Defines the map by the images of `domain.generators()`.
    pub fn from_generator_images(domain: FinGroup<E>, codomain: FinGroup<F>, gen_images: &[F]) -> Result<Self> {
        if let Some(bad) = gen_images.iter().find(|x| !codomain.contains(x)) {
            return Err(Error::input(format!("image {bad:?} outside the codomain")));
        }
        let images = extend_along_generators(&domain, codomain.identity().clone(), gen_images, |a: &F, b: &F| {
            a.compose(b)
        })?;
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    /// Defines the map element-wise; the hom property is checked on every
    /// (element, generator) pair.
    pub fn from_fn(domain: FinGroup<E>, codomain: FinGroup<F>, f: impl Fn(&E) -> F) -> Result<Self> {
        let gen_images: Vec<F> = domain.generators().iter().map(&f).collect();
        let hom = Self::from_generator_images(domain, codomain, &gen_images)?;
        if let Some(x) = hom.domain.elements().iter().find(|x| hom.images[*x] != f(x)) {
            return Err(Error::input(format!("map is not a homomorphism at {x:?}")));
        }
        Ok(hom)
    }

    pub fn domain(&self) -> &FinGroup<E> {
        &self.domain
    }

    pub fn codomain(&self) -> &FinGroup<F> {
        &self.codomain
    }

    pub fn apply(&self, x: &E) -> Option<&F> {
        self.images.get(x)
    }

    pub fn kernel(&self) -> FinGroup<E> {
        let id = self.codomain.identity();
        let k: Vec<E> = self
            .domain
            .elements()
            .iter()
            .filter(|x| self.images[*x] == *id)
            .cloned()
            .collect();
        FinGroup::from_elements(self.domain.identity().clone(), &k)
    }

    pub fn image(&self) -> FinGroup<F> {
        let gens: Vec<F> = self
            .domain
            .generators()
            .iter()
            .map(|g| self.images[g].clone())
            .collect();
        FinGroup::generate(self.codomain.identity().clone(), &gens)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }
}

/// A homomorphism into an abstract group given by a multiplication table.
#[derive(Clone, Debug)]
pub struct TableHom<E> {
    domain: FinGroup<E>,
    codomain: Arc<CayleyTable>,
    images: HashMap<E, u32>,
}

impl<E: GroupElement> TableHom<E> {
    pub fn from_generator_images(
        domain: FinGroup<E>,
        codomain: Arc<CayleyTable>,
        gen_images: &[usize],
    ) -> Result<Self> {
        if let Some(bad) = gen_images.iter().find(|&&x| x >= codomain.order()) {
            return Err(Error::input(format!("image index {bad} outside the codomain")));
        }
        let imgs: Vec<u32> = gen_images.iter().map(|&x| x as u32).collect();
        let table = codomain.clone();
        let images = extend_along_generators(&domain, 0u32, &imgs, move |a: &u32, b: &u32| {
            table.mul(*a as usize, *b as usize) as u32
        })?;
        Ok(TableHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &FinGroup<E> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CayleyTable> {
        &self.codomain
    }

    pub fn apply(&self, x: &E) -> Option<usize> {
        self.images.get(x).map(|&i| i as usize)
    }

    pub fn kernel(&self) -> FinGroup<E> {
        let k: Vec<E> = self
            .domain
            .elements()
            .iter()
            .filter(|x| self.images[*x] == 0)
            .cloned()
            .collect();
        FinGroup::from_elements(self.domain.identity().clone(), &k)
    }

    pub fn is_surjective(&self) -> bool {
        self.images.values().collect::<HashSet<_>>().len() == self.codomain.order()
    }

    /// Post-composes with a table homomorphism `map: codomain -> target`.
    pub fn then(&self, target: Arc<CayleyTable>, map: &[u32]) -> Result<TableHom<E>> {
        if !self.codomain.is_homomorphism(&target, map) {
            return Err(Error::input("post-composition map is not a homomorphism"));
        }
        Ok(TableHom {
            domain: self.domain.clone(),
            codomain: target,
            images: self.images.iter().map(|(x, &i)| (x.clone(), map[i as usize])).collect(),
        })
    }

    /// Some domain element mapping to each codomain index (`None` where not hit).
    pub fn section(&self) -> Vec<Option<E>> {
        let mut out: Vec<Option<E>> = vec![None; self.codomain.order()];
        for x in self.domain.elements() {
            let slot = &mut out[self.images[x] as usize];
            if slot.is_none() {
                *slot = Some(x.clone());
            }
        }
        out
    }
}

/// `G / N` as a multiplication table together with the projection.
pub fn quotient<E: GroupElement>(g: &FinGroup<E>, n: &FinGroup<E>) -> Result<(Arc<CayleyTable>, TableHom<E>)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::input("not a subgroup"));
    }
    if !n.is_normal_in(g) {
        return Err(Error::input("subgroup is not normal"));
    }
    let mut coset: HashMap<E, u32> = HashMap::with_capacity(g.order());
    let mut reps: Vec<E> = Vec::with_capacity(g.order() / n.order());
    let identity_first = std::iter::once(g.identity()).chain(g.elements().iter());
    for x in identity_first {
        if coset.contains_key(x) {
            continue;
        }
        let id = reps.len() as u32;
        for k in n.elements() {
            coset.insert(x.compose(k), id);
        }
        reps.push(x.clone());
    }
    let q = reps.len();
    let table = CayleyTable::from_fn(q, |a, b| coset[&reps[a].compose(&reps[b])] as usize)?;
    let table = Arc::new(table);
    let gen_images: Vec<usize> = g.generators().iter().map(|x| coset[x] as usize).collect();
    let proj = TableHom::from_generator_images(g.clone(), table.clone(), &gen_images)?;
    Ok((table, proj))
}
