//! Constructors for the standard permutation group families.
//!
//! All constructions are deterministic: the same parameters always produce
//! the same generator lists in the same order, so downstream enumeration and
//! reports are byte-stable.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{Group, PermGroup};
use crate::modp::{self, ModMatrix};
use crate::perm::Perm;

/// Largest permutation degree a construction is allowed to produce.
pub const MAX_CONSTRUCTED_DEGREE: usize = 1 << 20;

fn check_degree(degree: u128) -> Result<usize> {
    if degree > MAX_CONSTRUCTED_DEGREE as u128 {
        return Err(Error::ResourceExceeded(format!(
            "construction needs degree {}, cap is {}",
            degree, MAX_CONSTRUCTED_DEGREE
        )));
    }
    Ok(degree as usize)
}

/// Cyclic group of order n, acting as an n-cycle (trivial for n = 1).
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic(0) is undefined".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Perm::from_images((1..n).chain([0]).collect())?]
    };
    let g = PermGroup::from_generators(n, gens)?;
    assert_eq!(g.order(), &BigUint::from(n));
    Ok(Arc::new(g))
}

/// Symmetric group on n points.
pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric(0) is undefined".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Perm::from_images((1..n).chain([0]).collect())?);
    }
    Ok(Arc::new(PermGroup::from_generators(n, gens)?))
}

/// Alternating group on n points.
pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alternating(0) is undefined".into(),
        ));
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1, 2]])?);
    }
    if n >= 4 {
        // Even long cycle: full n-cycle for odd n, (n-1)-cycle fixing 0 otherwise.
        let cycle: Vec<usize> = if n % 2 == 1 {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        gens.push(Perm::from_cycles(n, &[cycle])?);
    }
    Ok(Arc::new(PermGroup::from_generators(n, gens)?))
}

/// Dihedral group of order 2n: symmetries of the regular n-gon.
/// n = 1 gives C2, n = 2 the Klein four group on 4 points.
pub fn dihedral(n: usize) -> Result<Group> {
    let g = match n {
        0 => return Err(Error::InvalidParameter("dihedral(0) is undefined".into())),
        1 => PermGroup::from_cycle_strs(2, &["(1,2)"])?,
        2 => PermGroup::from_cycle_strs(4, &["(1,2)", "(3,4)"])?,
        _ => {
            let rot = Perm::from_images((1..n).chain([0]).collect())?;
            let flip = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            PermGroup::from_generators(n, vec![rot, flip])?
        }
    };
    assert_eq!(g.order(), &BigUint::from(2 * n));
    Ok(Arc::new(g))
}

/// Elementary abelian group of order p^k on k disjoint p-cycles.
pub fn elementary_abelian(p: u64, k: usize) -> Result<Group> {
    if !modp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{} is not prime", p)));
    }
    if k == 0 {
        return Err(Error::InvalidParameter(
            "elementary_abelian needs k >= 1".into(),
        ));
    }
    let degree = check_degree(p as u128 * k as u128)?;
    let p = p as usize;
    let mut gens = Vec::with_capacity(k);
    for block in 0..k {
        let cycle: Vec<usize> = (0..p).map(|i| block * p + i).collect();
        gens.push(Perm::from_cycles(degree, &[cycle])?);
    }
    let g = PermGroup::from_generators(degree, gens)?;
    assert_eq!(g.order(), &BigUint::from(p).pow(k as u32));
    Ok(Arc::new(g))
}

/// A direct product together with the embedded generator lists of its factors.
pub struct ProductParts {
    pub group: Group,
    /// Generators of the left factor acting on the first block of points.
    pub left: Vec<Perm>,
    /// Generators of the right factor acting on the second block.
    pub right: Vec<Perm>,
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<ProductParts> {
    let da = a.degree();
    let degree = check_degree(da as u128 + b.degree() as u128)?;
    let embed_left = |g: &Perm| {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, slot) in images.iter_mut().take(da).enumerate() {
            *slot = g.apply(i);
        }
        Perm::from_images(images).expect("embedding preserves bijectivity")
    };
    let embed_right = |g: &Perm| {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..g.degree() {
            images[da + i] = da + g.apply(i);
        }
        Perm::from_images(images).expect("embedding preserves bijectivity")
    };
    let left: Vec<Perm> = a.generators().iter().map(embed_left).collect();
    let right: Vec<Perm> = b.generators().iter().map(embed_right).collect();
    let mut gens = left.clone();
    gens.extend(right.iter().cloned());
    let group = PermGroup::from_generators(degree, gens)?;
    assert_eq!(group.order(), &(a.order() * b.order()));
    Ok(ProductParts {
        group: Arc::new(group),
        left,
        right,
    })
}

/// A semidirect product F_p^k x <M> with its translation generators and the
/// permutation induced by M.
pub struct SemidirectParts {
    pub group: Group,
    /// Translations by the standard basis vectors e_0, ..., e_{k-1}.
    pub translations: Vec<Perm>,
    /// The point permutation v -> vM.
    pub action: Perm,
    pub matrix_order: u64,
}

/// Semidirect product of the translation group of F_p^k by the cyclic group
/// generated by an invertible matrix M, acting on the p^k vectors.
pub fn semidirect_product_matrix(m: &ModMatrix) -> Result<SemidirectParts> {
    let p = m.p;
    let k = m.k;
    if k == 0 {
        return Err(Error::InvalidParameter("matrix must be nonempty".into()));
    }
    let matrix_order = m.order(1 << 20)?;
    let degree = check_degree((p as u128).pow(k as u32))?;

    let point_of = |v: &[u64]| modp::vec_to_index(v, p) as usize;
    let translations: Vec<Perm> = (0..k)
        .map(|axis| {
            let images = (0..degree)
                .map(|idx| {
                    let mut v = modp::index_to_vec(idx as u128, p, k);
                    v[axis] = (v[axis] + 1) % p;
                    point_of(&v)
                })
                .collect();
            Perm::from_images(images).expect("translation is a bijection")
        })
        .collect();
    let action = Perm::from_images(
        (0..degree)
            .map(|idx| point_of(&m.apply(&modp::index_to_vec(idx as u128, p, k))))
            .collect(),
    )?;

    let mut gens = translations.clone();
    gens.push(action.clone());
    let group = PermGroup::from_generators(degree, gens)?;
    assert_eq!(
        group.order(),
        &(BigUint::from(p).pow(k as u32) * matrix_order)
    );
    Ok(SemidirectParts {
        group: Arc::new(group),
        translations,
        action,
        matrix_order,
    })
}

/// A wreath product H wr C_m in its imprimitive action, with the embedded
/// generators of every base copy and the block rotation.
pub struct WreathParts {
    pub group: Group,
    /// copy_gens[j] = generators of H acting on block j.
    pub copy_gens: Vec<Vec<Perm>>,
    /// Rotation sending block j to block j+1 (mod m) pointwise.
    pub top: Perm,
}

/// Wreath product of `h` by a cyclic group of order m, acting on m disjoint
/// copies of h's points. Generated by copy 0 and the rotation.
pub fn wreath_product_cyclic_top(h: &PermGroup, m: usize) -> Result<WreathParts> {
    if m == 0 {
        return Err(Error::InvalidParameter("wreath top must have order >= 1".into()));
    }
    let d = h.degree();
    let degree = check_degree(d as u128 * m as u128)?;
    let copy_gens: Vec<Vec<Perm>> = (0..m)
        .map(|j| {
            h.generators()
                .iter()
                .map(|g| {
                    let mut images: Vec<usize> = (0..degree).collect();
                    for i in 0..d {
                        images[j * d + i] = j * d + g.apply(i);
                    }
                    Perm::from_images(images).expect("block embedding is a bijection")
                })
                .collect()
        })
        .collect();
    let top = Perm::from_images(
        (0..degree)
            .map(|point| {
                let (j, i) = (point / d, point % d);
                ((j + 1) % m) * d + i
            })
            .collect(),
    )?;
    let mut gens = copy_gens[0].clone();
    gens.push(top.clone());
    let group = PermGroup::from_generators(degree, gens)?;
    let mut expected = BigUint::one();
    for _ in 0..m {
        expected *= h.order();
    }
    expected *= m;
    assert_eq!(group.order(), &expected);
    Ok(WreathParts {
        group: Arc::new(group),
        copy_gens,
        top,
    })
}

/// PSL(2, q) for an odd prime q, acting on the q + 1 points of the
/// projective line (point q plays the role of infinity). Generated by
/// x -> x + 1 and x -> -1/x.
pub fn psl2(q: u64) -> Result<Group> {
    if !modp::is_prime(q) || q < 3 {
        return Err(Error::InvalidParameter(format!(
            "psl2 needs an odd prime, got {}",
            q
        )));
    }
    let degree = check_degree(q as u128 + 1)?;
    let qs = q as usize;
    let infinity = qs;
    let translate = Perm::from_images(
        (0..degree)
            .map(|x| if x == infinity { infinity } else { (x + 1) % qs })
            .collect(),
    )?;
    let invert = Perm::from_images(
        (0..degree)
            .map(|x| {
                if x == infinity {
                    0
                } else if x == 0 {
                    infinity
                } else {
                    // -1/x
                    (qs - modp::mod_inverse(x as u64, q) as usize) % qs
                }
            })
            .collect(),
    )?;
    let group = PermGroup::from_generators(degree, vec![translate, invert])?;
    let expected = BigUint::from(q + 1) * q * (q - 1) / 2u32;
    assert_eq!(group.order(), &expected);
    Ok(Arc::new(group))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(g: &Group) -> u128 {
        g.order_u128().unwrap()
    }

    #[test]
    fn standard_family_orders() {
        assert_eq!(ord(&cyclic(1).unwrap()), 1);
        assert_eq!(ord(&cyclic(12).unwrap()), 12);
        assert_eq!(ord(&symmetric(1).unwrap()), 1);
        assert_eq!(ord(&symmetric(5).unwrap()), 120);
        assert_eq!(ord(&alternating(2).unwrap()), 1);
        assert_eq!(ord(&alternating(4).unwrap()), 12);
        assert_eq!(ord(&alternating(5).unwrap()), 60);
        assert_eq!(ord(&alternating(7).unwrap()), 2520);
        assert_eq!(ord(&dihedral(1).unwrap()), 2);
        assert_eq!(ord(&dihedral(2).unwrap()), 4);
        assert_eq!(ord(&dihedral(4).unwrap()), 8);
        assert_eq!(ord(&dihedral(6).unwrap()), 12);
        assert_eq!(ord(&elementary_abelian(3, 2).unwrap()), 9);
        assert_eq!(ord(&elementary_abelian(2, 3).unwrap()), 8);
        assert!(elementary_abelian(6, 2).is_err());
    }

    #[test]
    fn dihedral_is_nonabelian_from_three() {
        assert!(dihedral(2).unwrap().is_abelian());
        assert!(!dihedral(3).unwrap().is_abelian());
        assert!(!dihedral(4).unwrap().is_abelian());
    }

    #[test]
    fn direct_product_embeds_factors() {
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let parts = direct_product(&s3, &c2).unwrap();
        assert_eq!(ord(&parts.group), 12);
        assert_eq!(parts.group.degree(), 5);
        assert!(parts.group.contains_all(&parts.left));
        assert!(parts.group.contains_all(&parts.right));
        // The two factors commute elementwise.
        for a in &parts.left {
            for b in &parts.right {
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }

    #[test]
    fn frobenius_groups_from_matrices() {
        // x -> 2x has order 4 mod 5: the Frobenius group of order 20.
        let f20 = semidirect_product_matrix(&ModMatrix::new(5, 1, vec![2]).unwrap()).unwrap();
        assert_eq!(ord(&f20.group), 20);
        assert_eq!(f20.matrix_order, 4);
        // 2 has order 3 mod 7: the Frobenius group of order 21.
        let f21 = semidirect_product_matrix(&ModMatrix::new(7, 1, vec![2]).unwrap()).unwrap();
        assert_eq!(ord(&f21.group), 21);
        assert!(!f21.group.is_abelian());
        // Translations form a subgroup and are normalized by the action.
        assert!(f21.group.contains_all(&f21.translations));
        let t = PermGroup::from_generators(7, f21.translations.clone()).unwrap();
        assert!(crate::group::normalizes(&[f21.action.clone()], &t));
    }

    #[test]
    fn order_five_plane_action() {
        let m = ModMatrix::new(19, 2, vec![0, 18, 1, 4]).unwrap();
        let parts = semidirect_product_matrix(&m).unwrap();
        assert_eq!(parts.group.degree(), 361);
        assert_eq!(ord(&parts.group), 1805);
        assert_eq!(parts.matrix_order, 5);
    }

    #[test]
    fn wreath_products() {
        let c2 = cyclic(2).unwrap();
        let w = wreath_product_cyclic_top(&c2, 3).unwrap();
        assert_eq!(ord(&w.group), 24);
        assert_eq!(w.group.degree(), 6);
        assert_eq!(w.copy_gens.len(), 3);
        for gens in &w.copy_gens {
            assert!(w.group.contains_all(gens));
        }
        assert!(w.group.contains(&w.top));

        let f21 = semidirect_product_matrix(&ModMatrix::new(7, 1, vec![2]).unwrap()).unwrap();
        let big = wreath_product_cyclic_top(&f21.group, 7).unwrap();
        assert_eq!(big.group.degree(), 49);
        // 21^7 * 7 = 3^7 * 7^8.
        assert_eq!(ord(&big.group), 12_607_619_787);
    }

    #[test]
    fn projective_special_linear_orders() {
        assert_eq!(ord(&psl2(3).unwrap()), 12);
        assert_eq!(ord(&psl2(5).unwrap()), 60);
        assert_eq!(ord(&psl2(7).unwrap()), 168);
        assert_eq!(ord(&psl2(11).unwrap()), 660);
        assert_eq!(ord(&psl2(13).unwrap()), 1092);
        assert!(psl2(4).is_err());
    }
}
