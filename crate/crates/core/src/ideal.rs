//! Ideals of near-trusses and the congruences they induce, ideal generation
//! by fixpoint closure, and J-rings: groups with an associative
//! multiplication satisfying the weak left distributivity
//! `z(x + y) = zx - z·0 + zy`.

use crate::error::{Error, Result};
use crate::group::GroupView;
use crate::report::{Limits, ValidationReport};
use crate::scan;
use crate::subobject::{
    congruence_of_normal, heap_congruence_violation, is_normal_quick, is_subheap, Partition,
    Subset,
};
use crate::table::{BinaryTable, Elem, Endomap};
use crate::truss::NearTruss;

/// Whether a heap congruence also respects the multiplication, checked one
/// argument at a time.
pub fn multiplicative_violation(x: &NearTruss, part: &Partition) -> Option<(Elem, Elem)> {
    let n = x.size();
    for a in 0..n {
        for b in 0..n {
            if !part.same_class(a, b) {
                continue;
            }
            for y in 0..n {
                if !part.same_class(x.mul(a, y), x.mul(b, y))
                    || !part.same_class(x.mul(y, a), x.mul(y, b))
                {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

pub fn is_near_truss_congruence(x: &NearTruss, part: &Partition) -> bool {
    heap_congruence_violation(x.heap(), part).is_none()
        && multiplicative_violation(x, part).is_none()
}

/// The two absorption conditions an ideal satisfies, evaluated independently
/// of (and cross-checkable against) the direct multiplicativity test of the
/// induced congruence.
#[derive(Debug, Clone)]
pub struct IdealReport {
    pub is_subheap: bool,
    pub is_normal: bool,
    /// `[xp, xq, q]` stays in S for all x and p, q in S.
    pub absorbs_left_products: bool,
    /// `[[p,q,x]y, xy, q]` stays in S for all x, y and p, q in S.
    pub absorbs_translates: bool,
    /// Direct test: the congruence of S respects the multiplication. Only
    /// defined when S is a normal subheap.
    pub congruence_multiplicative: Option<bool>,
}

impl IdealReport {
    pub fn is_ideal(&self) -> bool {
        self.is_normal && self.absorbs_left_products && self.absorbs_translates
    }

    /// The absorption conditions and the direct congruence test must agree on
    /// normal subheaps.
    pub fn conditions_agree(&self) -> bool {
        match self.congruence_multiplicative {
            Some(direct) => direct == (self.absorbs_left_products && self.absorbs_translates),
            None => true,
        }
    }
}

pub fn is_near_truss_ideal(x: &NearTruss, s: &Subset) -> IdealReport {
    let sub = is_subheap(x.heap(), s);
    let normal = is_normal_quick(x.heap(), s);
    let n = x.size();
    let mask = s.mask(n);
    let members = s.members();
    let absorbs_left_products = (0..n).all(|a| {
        members.iter().all(|&p| {
            members
                .iter()
                .all(|&q| mask[x.bracket(x.mul(a, p), x.mul(a, q), q)])
        })
    });
    let absorbs_translates = (0..n).all(|a| {
        (0..n).all(|y| {
            members.iter().all(|&p| {
                members.iter().all(|&q| {
                    mask[x.bracket(x.mul(x.bracket(p, q, a), y), x.mul(a, y), q)]
                })
            })
        })
    });
    let congruence_multiplicative = if normal {
        let part = congruence_of_normal(x.heap(), s).expect("normal subheap");
        Some(multiplicative_violation(x, &part).is_none())
    } else {
        None
    };
    IdealReport {
        is_subheap: sub,
        is_normal: normal,
        absorbs_left_products,
        absorbs_translates,
        congruence_multiplicative,
    }
}

/// Least ideal containing `seed` and the anchor `e`: fixpoint closure under
/// the bracket, the normality condition and both absorption conditions.
pub fn ideal_closure(x: &NearTruss, seed: &Subset, e: Elem) -> Result<Subset> {
    x.heap().table().check_element(e)?;
    seed.check_range(x.size())?;
    let n = x.size();
    let mut mask = seed.mask(n);
    mask[e] = true;
    loop {
        let members: Vec<Elem> = (0..n).filter(|&v| mask[v]).collect();
        let mut grew = false;
        let mut add = |v: Elem, mask: &mut Vec<bool>| {
            if !mask[v] {
                mask[v] = true;
                grew = true;
            }
        };
        for &p in &members {
            for &q in &members {
                for &r in &members {
                    add(x.bracket(p, q, r), &mut mask);
                }
                for a in 0..n {
                    // normality: [[a,p,q],a,p]
                    add(x.bracket(x.bracket(a, p, q), a, p), &mut mask);
                    // left products: [ap, aq, q]
                    add(x.bracket(x.mul(a, p), x.mul(a, q), q), &mut mask);
                    // translates: [[p,q,a]y, ay, q]
                    for y in 0..n {
                        add(
                            x.bracket(x.mul(x.bracket(p, q, a), y), x.mul(a, y), q),
                            &mut mask,
                        );
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let result = Subset::new((0..n).filter(|&v| mask[v]).collect());
    debug_assert!(is_near_truss_ideal(x, &result).is_ideal());
    Ok(result)
}

/// All ideals containing `e`, via normal subgroups of the retract group at
/// `e` filtered by the absorption conditions.
pub fn enumerate_ideals_through(x: &NearTruss, e: Elem, limits: &Limits) -> Result<Vec<Subset>> {
    limits.check("ideal enumeration", x.size())?;
    let group = x.heap().retract_group(e)?;
    let mut out = Vec::new();
    for normal in group.normal_subgroups() {
        let candidate = Subset::new(normal);
        if is_near_truss_ideal(x, &candidate).is_ideal() {
            out.push(candidate);
        }
    }
    out.sort();
    Ok(out)
}

/// All congruences of the near-truss: heap congruences that respect the
/// multiplication.
pub fn enumerate_near_truss_congruences(
    x: &NearTruss,
    limits: &Limits,
) -> Result<Vec<Partition>> {
    let heap_congruences = crate::subobject::enumerate_congruences(x.heap(), limits)?;
    Ok(heap_congruences
        .into_iter()
        .filter(|p| multiplicative_violation(x, p).is_none())
        .collect())
}

/// The congruence induced by an ideal, with the multiplicativity re-checked.
pub fn congruence_of_ideal(x: &NearTruss, s: &Subset) -> Result<Partition> {
    let report = is_near_truss_ideal(x, s);
    if !report.is_ideal() {
        return Err(Error::NotAnIdeal {
            reason: if !report.is_normal {
                "not a normal subheap".into()
            } else {
                "absorption conditions fail".into()
            },
        });
    }
    let part = congruence_of_normal(x.heap(), s)?;
    if let Some((a, b)) = multiplicative_violation(x, &part) {
        return Err(Error::NotACongruence { x: a, y: b });
    }
    Ok(part)
}

/// The two maps between ideals through a base and congruences, with
/// surjectivity, the mutual round trips and order preservation checked.
#[derive(Debug, Clone)]
pub struct IdealCongruenceReport {
    pub base: Elem,
    pub ideals: Vec<Subset>,
    pub congruences: Vec<Partition>,
    /// congruence of each ideal, aligned with `ideals`
    pub forward: Vec<Partition>,
    pub surjective: bool,
    pub round_trip_on_ideals: bool,
    pub round_trip_on_congruences: bool,
    pub order_isomorphism: bool,
}

impl IdealCongruenceReport {
    pub fn passed(&self) -> bool {
        self.surjective
            && self.round_trip_on_ideals
            && self.round_trip_on_congruences
            && self.order_isomorphism
    }
}

pub fn ideal_congruence_maps(
    x: &NearTruss,
    e: Elem,
    limits: &Limits,
) -> Result<IdealCongruenceReport> {
    x.heap().table().check_element(e)?;
    let ideals = enumerate_ideals_through(x, e, limits)?;
    let congruences = enumerate_near_truss_congruences(x, limits)?;
    let forward: Vec<Partition> = ideals
        .iter()
        .map(|s| congruence_of_ideal(x, s).expect("enumerated ideals are ideals"))
        .collect();
    let surjective = congruences
        .iter()
        .all(|c| forward.iter().any(|f| f == c));
    let round_trip_on_ideals = ideals
        .iter()
        .zip(forward.iter())
        .all(|(s, c)| c.class_of(e) == *s);
    let round_trip_on_congruences = congruences.iter().all(|c| {
        let back = c.class_of(e);
        match ideals.iter().position(|s| *s == back) {
            Some(i) => forward[i] == *c,
            None => false,
        }
    });
    let order_isomorphism = ideals.iter().enumerate().all(|(i, a)| {
        ideals.iter().enumerate().all(|(j, b)| {
            a.is_subset_of(b) == forward[i].refines(&forward[j])
        })
    });
    Ok(IdealCongruenceReport {
        base: e,
        ideals,
        congruences,
        forward,
        surjective,
        round_trip_on_ideals,
        round_trip_on_congruences,
        order_isomorphism,
    })
}

/// A group with an associative multiplication satisfying
/// `z(x + y) = zx - z·0 + zy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JRing {
    add: GroupView,
    mul: BinaryTable,
}

/// Axioms report plus the two sign-of-life facts about the zero element.
#[derive(Debug, Clone)]
pub struct JRingReport {
    pub report: ValidationReport,
    /// `x · 0 = 0` for every x (ordinary rings do this, circle rings do not).
    pub zero_absorbs_right: bool,
    /// `0 · x = x` for every x.
    pub zero_left_identity: bool,
}

/// Scan the five J-ring axioms on raw tables.
pub fn validate_jring_tables(add: &BinaryTable, mul: &BinaryTable) -> Result<JRingReport> {
    let n = add.size();
    if mul.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: mul.size(),
        });
    }
    let mut report = ValidationReport::new("J-ring");
    report.record(
        "add_associativity",
        scan::first_failure::<3, _>(n, |&[x, y, z]| {
            add.get(add.get(x, y), z) == add.get(x, add.get(y, z))
        })
        .map(|w| w.to_vec()),
    );
    let zero = (0..n).find(|&e| (0..n).all(|x| add.get(e, x) == x && add.get(x, e) == x));
    if zero.is_none() {
        report.record("add_identity", Some(vec![]));
    }
    let inverses_ok = zero.is_some_and(|zero| {
        (0..n).all(|x| (0..n).any(|y| add.get(x, y) == zero && add.get(y, x) == zero))
    });
    if zero.is_some() && !inverses_ok {
        report.record("add_inverses", Some(vec![]));
    }
    report.record(
        "mul_associativity",
        scan::first_failure::<3, _>(n, |&[x, y, z]| {
            mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
        })
        .map(|w| w.to_vec()),
    );
    let mut zero_absorbs_right = false;
    let mut zero_left_identity = false;
    if let (Some(zero), true) = (zero, inverses_ok) {
        let neg: Vec<Elem> = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| add.get(x, y) == zero && add.get(y, x) == zero)
                    .expect("inverses checked")
            })
            .collect();
        report.record(
            "weak_left_distributivity",
            scan::first_failure::<3, _>(n, |&[z, x, y]| {
                let lhs = mul.get(z, add.get(x, y));
                let rhs = add.get(
                    add.get(mul.get(z, x), neg[mul.get(z, zero)]),
                    mul.get(z, y),
                );
                lhs == rhs
            })
            .map(|w| w.to_vec()),
        );
        zero_absorbs_right = (0..n).all(|x| mul.get(x, zero) == zero);
        zero_left_identity = (0..n).all(|x| mul.get(zero, x) == x);
    }
    Ok(JRingReport {
        report,
        zero_absorbs_right,
        zero_left_identity,
    })
}

impl JRing {
    pub fn new(add: GroupView, mul: BinaryTable) -> Result<Self> {
        let checked = validate_jring_tables(add.table(), &mul)?;
        checked.report.into_result("J-ring")?;
        Ok(JRing { add, mul })
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn add(&self) -> &GroupView {
        &self.add
    }

    pub fn mul_table(&self) -> &BinaryTable {
        &self.mul
    }

    pub fn zero(&self) -> Elem {
        self.add.identity()
    }

    #[inline]
    pub fn plus(&self, x: Elem, y: Elem) -> Elem {
        self.add.mul(x, y)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.add.inv(x)
    }

    #[inline]
    pub fn times(&self, x: Elem, y: Elem) -> Elem {
        self.mul.get(x, y)
    }

    /// `λ_x(z) = -(x·0) + xz`; the corrected multiplication.
    pub fn lambda(&self, x: Elem) -> Endomap {
        let shift = self.neg(self.times(x, self.zero()));
        Endomap::from_fn(self.size(), |z| self.plus(shift, self.times(x, z)))
            .expect("closed")
    }
}

/// Package the retract of a left near-truss at `e` as a J-ring; the weak
/// distributivity is rechecked by the constructor.
pub fn jring_from_retract(x: &NearTruss, e: Elem) -> Result<JRing> {
    x.require_left()?;
    let add = x.heap().retract_group(e)?;
    JRing::new(add, x.mul_table().clone())
}

#[derive(Debug, Clone)]
pub struct JRingIdealReport {
    pub is_normal_subgroup: bool,
    /// `xn - x·0` stays in N.
    pub lambda_condition: bool,
    /// `(x+n)y - xy` stays in N.
    pub translation_condition: bool,
}

impl JRingIdealReport {
    pub fn is_ideal(&self) -> bool {
        self.is_normal_subgroup && self.lambda_condition && self.translation_condition
    }
}

pub fn is_jring_ideal(j: &JRing, n_sub: &Subset) -> Result<JRingIdealReport> {
    n_sub.check_range(j.size())?;
    let n = j.size();
    let mask = n_sub.mask(n);
    let is_normal_subgroup = j.add().is_normal_subgroup(n_sub.members());
    let lambda_condition = (0..n).all(|x| {
        n_sub.members().iter().all(|&m| {
            mask[j.plus(j.times(x, m), j.neg(j.times(x, j.zero())))]
        })
    });
    let translation_condition = (0..n).all(|x| {
        (0..n).all(|y| {
            n_sub.members().iter().all(|&m| {
                mask[j.plus(j.times(j.plus(x, m), y), j.neg(j.times(x, y)))]
            })
        })
    });
    Ok(JRingIdealReport {
        is_normal_subgroup,
        lambda_condition,
        translation_condition,
    })
}

/// The λ maps of a J-ring and, when a subset is an ideal, the induced action
/// on the quotient.
#[derive(Debug, Clone)]
pub struct JRingLambdaReport {
    pub maps: Vec<Endomap>,
    pub additive_endomorphisms: bool,
    pub semigroup_morphism: bool,
    /// `λ_x(N) ⊆ N`.
    pub preserves_ideal: Option<bool>,
    /// congruent arguments give congruent values, so the quotient maps are
    /// defined
    pub quotient_well_defined: Option<bool>,
    /// `λ_x = λ_y` on the quotient whenever `x ~ y`
    pub constant_on_classes: Option<bool>,
}

impl JRingLambdaReport {
    pub fn passed(&self) -> bool {
        self.additive_endomorphisms
            && self.semigroup_morphism
            && self.preserves_ideal.unwrap_or(true)
            && self.quotient_well_defined.unwrap_or(true)
            && self.constant_on_classes.unwrap_or(true)
    }
}

pub fn jring_lambda(j: &JRing, n_sub: &Subset) -> Result<JRingLambdaReport> {
    let n = j.size();
    n_sub.check_range(n)?;
    let maps: Vec<Endomap> = (0..n).map(|x| j.lambda(x)).collect();
    let additive_endomorphisms = scan::holds_on_all::<3, _>(n, |&[x, z, w]| {
        maps[x].apply(j.plus(z, w)) == j.plus(maps[x].apply(z), maps[x].apply(w))
    });
    let semigroup_morphism = scan::holds_on_all::<2, _>(n, |&[x, y]| {
        maps[j.times(x, y)] == maps[x].compose(&maps[y])
    });
    let ideal = is_jring_ideal(j, n_sub)?;
    let (preserves_ideal, quotient_well_defined, constant_on_classes) = if ideal.is_ideal() {
        let mask = n_sub.mask(n);
        // x ~ y iff x - y in N
        let same = |a: Elem, b: Elem| mask[j.plus(a, j.neg(b))];
        let preserves = (0..n).all(|x| {
            n_sub
                .members()
                .iter()
                .all(|&m| mask[maps[x].apply(m)])
        });
        let well_defined = scan::holds_on_all::<3, _>(n, |&[x, z, w]| {
            !same(z, w) || same(maps[x].apply(z), maps[x].apply(w))
        });
        let constant = scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
            !same(x, y) || same(maps[x].apply(z), maps[y].apply(z))
        });
        (Some(preserves), Some(well_defined), Some(constant))
    } else {
        (None, None, None)
    };
    Ok(JRingLambdaReport {
        maps,
        additive_endomorphisms,
        semigroup_morphism,
        preserves_ideal,
        quotient_well_defined,
        constant_on_classes,
    })
}

/// Exhaustive bijection search preserving both operations.
pub fn jring_isomorphism(a: &JRing, b: &JRing) -> Option<Vec<Elem>> {
    use itertools::Itertools;
    let n = a.size();
    if n != b.size() {
        return None;
    }
    // any isomorphism maps zero to zero
    let rest_a: Vec<Elem> = (0..n).filter(|&x| x != a.zero()).collect();
    let rest_b: Vec<Elem> = (0..n).filter(|&x| x != b.zero()).collect();
    for perm in rest_b.iter().copied().permutations(rest_b.len()) {
        let mut map = vec![0usize; n];
        map[a.zero()] = b.zero();
        for (&x, &y) in rest_a.iter().zip(perm.iter()) {
            map[x] = y;
        }
        let ok = scan::holds_on_all::<2, _>(n, |&[x, y]| {
            map[a.plus(x, y)] == b.plus(map[x], map[y])
                && map[a.times(x, y)] == b.times(map[x], map[y])
        });
        if ok {
            return Some(map);
        }
    }
    None
}
