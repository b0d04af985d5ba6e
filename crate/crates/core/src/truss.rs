//! Near-trusses, trusses and semi-near-trusses: a heap (or semiheap)
//! carrying a compatible semigroup multiplication. Constructors from rings,
//! near-rings and skew braces; the self-map near-truss `M(X)`; the embedding
//! of a right near-truss into `M(Y × Z_m)`; the multiplicative actions on
//! retract groups; and the endomorphism truss of an abelian heap.

use crate::error::{Error, Result};
use crate::group::GroupView;
use crate::heap::{self, Heap, Level, Semiheap};
use crate::report::{Limits, ValidationReport};
use crate::scan;
use crate::table::{BinaryTable, Elem, Endomap, TernaryTable};

/// Which distributivity law(s) the multiplication satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    pub fn is_left(self) -> bool {
        matches!(self, Side::Left | Side::Both)
    }

    pub fn is_right(self) -> bool {
        matches!(self, Side::Right | Side::Both)
    }
}

/// Scan the near-truss axioms: heap axioms, associativity of the
/// multiplication and the declared distributivity law(s). Left-distributive
/// tables are additionally cross-checked against the equivalent retract-group
/// identity `w(x *_y z) = (wx) *_y (wy)^{-*} *_y (wz)` at every base.
pub fn validate_near_truss(
    heap_table: &TernaryTable,
    mul: &BinaryTable,
    side: Side,
    limits: &Limits,
) -> Result<ValidationReport> {
    let n = heap_table.size();
    if mul.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: mul.size(),
        });
    }
    limits.check("near-truss axiom scan", n)?;
    let mut report = heap::validate_ternary(heap_table, Level::Heap, limits)?;
    report.kind = match side {
        Side::Left => "left near-truss",
        Side::Right => "right near-truss",
        Side::Both => "two-sided near-truss",
    };
    record_multiplication_laws(&mut report, heap_table, mul, side);
    Ok(report)
}

/// Truss axioms: abelian heap plus both distributivity laws.
pub fn validate_truss(
    heap_table: &TernaryTable,
    mul: &BinaryTable,
    limits: &Limits,
) -> Result<ValidationReport> {
    let n = heap_table.size();
    if mul.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: mul.size(),
        });
    }
    limits.check("truss axiom scan", n)?;
    let mut report = heap::validate_ternary(heap_table, Level::AbelianHeap, limits)?;
    report.kind = "truss";
    record_multiplication_laws(&mut report, heap_table, mul, Side::Both);
    Ok(report)
}

fn record_multiplication_laws(
    report: &mut ValidationReport,
    heap_table: &TernaryTable,
    mul: &BinaryTable,
    side: Side,
) {
    let n = heap_table.size();
    report.record(
        "mul_associativity",
        scan::first_failure::<3, _>(n, |&[x, y, z]| {
            mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
        })
        .map(|w| w.to_vec()),
    );
    if side.is_left() {
        report.record(
            "left_distributivity",
            scan::first_failure::<4, _>(n, |&[x, y, z, w]| {
                mul.get(x, heap_table.get(y, z, w))
                    == heap_table.get(mul.get(x, y), mul.get(x, z), mul.get(x, w))
            })
            .map(|w| w.to_vec()),
        );
        // redundant with left distributivity; both are scanned literally
        report.record(
            "retract_identity",
            scan::first_failure::<4, _>(n, |&[y, w, x, z]| {
                let lhs = mul.get(w, heap_table.get(x, y, z));
                let wy_inv = heap_table.get(y, mul.get(w, y), y);
                let rhs = heap_table.get(
                    heap_table.get(mul.get(w, x), y, wy_inv),
                    y,
                    mul.get(w, z),
                );
                lhs == rhs
            })
            .map(|w| w.to_vec()),
        );
    }
    if side.is_right() {
        report.record(
            "right_distributivity",
            scan::first_failure::<4, _>(n, |&[x, y, z, w]| {
                mul.get(heap_table.get(y, z, w), x)
                    == heap_table.get(mul.get(y, x), mul.get(z, x), mul.get(w, x))
            })
            .map(|w| w.to_vec()),
        );
    }
}

/// A validated near-truss. `side` records the declared orientation; the
/// `abelian` flag is computed from the heap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearTruss {
    heap: Heap,
    mul: BinaryTable,
    side: Side,
    abelian: bool,
}

impl NearTruss {
    pub fn new(
        heap_table: TernaryTable,
        mul: BinaryTable,
        side: Side,
        limits: &Limits,
    ) -> Result<Self> {
        validate_near_truss(&heap_table, &mul, side, limits)?.into_result("near-truss")?;
        let heap = Heap::from_validated(heap_table);
        let abelian = heap.is_abelian();
        Ok(NearTruss {
            heap,
            mul,
            side,
            abelian,
        })
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn mul_table(&self) -> &BinaryTable {
        &self.mul
    }

    #[inline]
    pub fn bracket(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.heap.get(x, y, z)
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul.get(x, y)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Abelian heap with both distributivity laws.
    pub fn is_truss(&self) -> bool {
        self.abelian && matches!(self.side, Side::Both)
    }

    /// Same heap, opposite multiplication, mirrored side.
    pub fn opposite(&self) -> NearTruss {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Both => Side::Both,
        };
        NearTruss {
            heap: self.heap.clone(),
            mul: self.mul.opposite(),
            side,
            abelian: self.abelian,
        }
    }

    pub fn require_left(&self) -> Result<()> {
        if self.side.is_left() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "operation requires a left (or two-sided) near-truss".into(),
            ))
        }
    }

    pub fn require_right(&self) -> Result<()> {
        if self.side.is_right() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "operation requires a right (or two-sided) near-truss".into(),
            ))
        }
    }

    pub fn require_truss(&self) -> Result<()> {
        if self.is_truss() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "operation requires a truss (abelian heap, both distributivity laws)".into(),
            ))
        }
    }

    /// Whether `f` respects both the bracket and the multiplication.
    pub fn is_endomorphism(&self, f: &Endomap) -> bool {
        self.heap.is_endomorphism(f)
            && scan::holds_on_all::<2, _>(self.size(), |&[x, y]| {
                f.apply(self.mul(x, y)) == self.mul(f.apply(x), f.apply(y))
            })
    }

    pub fn endomorphisms(&self) -> Vec<Endomap> {
        self.heap
            .endomorphisms()
            .into_iter()
            .filter(|f| {
                scan::holds_on_all::<2, _>(self.size(), |&[x, y]| {
                    f.apply(self.mul(x, y)) == self.mul(f.apply(x), f.apply(y))
                })
            })
            .collect()
    }
}

/// Both operations associative and multiplication left-distributive over the
/// ternary operation; the Mal'tsev laws are not required.
pub fn validate_semi_near_truss(
    semiheap: &TernaryTable,
    mul: &BinaryTable,
    limits: &Limits,
) -> Result<ValidationReport> {
    let n = semiheap.size();
    if mul.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: mul.size(),
        });
    }
    limits.check("semi-near-truss axiom scan", n)?;
    let mut report = heap::validate_ternary(semiheap, Level::Semiheap, limits)?;
    report.kind = "left semi-near-truss";
    report.record(
        "mul_associativity",
        scan::first_failure::<3, _>(n, |&[x, y, z]| {
            mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
        })
        .map(|w| w.to_vec()),
    );
    report.record(
        "left_distributivity",
        scan::first_failure::<4, _>(n, |&[x, y, z, w]| {
            mul.get(x, semiheap.get(y, z, w))
                == semiheap.get(mul.get(x, y), mul.get(x, z), mul.get(x, w))
        })
        .map(|w| w.to_vec()),
    );
    Ok(report)
}

/// A validated left semi-near-truss.
#[derive(Debug, Clone)]
pub struct SemiNearTruss {
    pub semiheap: Semiheap,
    pub mul: BinaryTable,
}

impl SemiNearTruss {
    pub fn new(semiheap: TernaryTable, mul: BinaryTable, limits: &Limits) -> Result<Self> {
        validate_semi_near_truss(&semiheap, &mul, limits)?.into_result("semi-near-truss")?;
        Ok(SemiNearTruss {
            semiheap: Semiheap::new(semiheap, limits)?,
            mul,
        })
    }
}

/// Left-projection semiheap `p(x, y, z) = x` over any finite semigroup.
pub fn semi_near_truss_left_projection(mul: &BinaryTable) -> Result<SemiNearTruss> {
    let n = mul.size();
    if !mul.is_associative() {
        return Err(Error::invalid("semigroup", "associativity", &[]));
    }
    let semiheap = TernaryTable::from_fn(n, |x, _, _| x)?;
    SemiNearTruss::new(semiheap, mul.clone(), &Limits::covering(n))
}

/// Join semiheap with meet multiplication over a distributive lattice.
pub fn semi_near_truss_from_lattice(
    join: &BinaryTable,
    meet: &BinaryTable,
) -> Result<SemiNearTruss> {
    let semiheap = heap::semiheap_from_join_lattice(join)?;
    let n = join.size();
    if meet.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: meet.size(),
        });
    }
    SemiNearTruss::new(semiheap.table().clone(), meet.clone(), &Limits::covering(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Ring,
    LeftNearRing,
}

/// `[x, y, z] = x - y + z` over the additive group. Rings yield trusses,
/// left near-rings yield left near-trusses. Ring inputs with a multiplicative
/// identity `1` are additionally checked against the two distinguished
/// retracts: the retract at `0` is the ring itself and the retract at `1` is
/// the Jacobson circle ring via `x ↦ x - 1`.
pub fn near_truss_from_ring(
    add: &GroupView,
    mul: &BinaryTable,
    kind: RingKind,
) -> Result<NearTruss> {
    let n = add.size();
    if mul.size() != n {
        return Err(Error::CarrierMismatch {
            left: n,
            right: mul.size(),
        });
    }
    if !mul.is_associative() {
        let w = scan::first_failure::<3, _>(n, |&[x, y, z]| {
            mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
        })
        .expect("witness exists");
        return Err(Error::invalid("ring multiplication", "associativity", &w));
    }
    let left_distributive = scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
        mul.get(x, add.mul(y, z)) == add.mul(mul.get(x, y), mul.get(x, z))
    });
    if !left_distributive {
        return Err(Error::invalid("ring", "left_distributivity", &[]));
    }
    if kind == RingKind::Ring {
        if !add.is_abelian() {
            return Err(Error::invalid("ring", "abelian_addition", &[]));
        }
        let right_distributive = scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
            mul.get(add.mul(y, z), x) == add.mul(mul.get(y, x), mul.get(z, x))
        });
        if !right_distributive {
            return Err(Error::invalid("ring", "right_distributivity", &[]));
        }
    }
    let heap_table = TernaryTable::from_fn(n, |x, y, z| add.mul(add.mul(x, add.inv(y)), z))?;
    let side = match kind {
        RingKind::Ring => Side::Both,
        RingKind::LeftNearRing => Side::Left,
    };
    let truss = NearTruss::new(heap_table, mul.clone(), side, &Limits::covering(n))?;

    if kind == RingKind::Ring {
        // retract at the additive zero reproduces the ring addition
        let zero = add.identity();
        let retract = truss.heap().retract_group(zero)?;
        assert_eq!(retract.table(), add.table(), "retract at 0 is the ring");
        // when a multiplicative identity exists, the retract there is the
        // Jacobson circle ring via x ↦ x - 1
        let one = (0..n).find(|&e| (0..n).all(|x| mul.get(e, x) == x && mul.get(x, e) == x));
        if let Some(one) = one {
            let shift = |x: Elem| add.mul(x, add.inv(one));
            let circle = |x: Elem, y: Elem| add.mul(add.mul(x, y), mul.get(x, y));
            let ok = scan::holds_on_all::<2, _>(n, |&[x, z]| {
                shift(truss.bracket(x, one, z)) == add.mul(shift(x), shift(z))
                    && shift(mul.get(x, z)) == circle(shift(x), shift(z))
            });
            assert!(ok, "retract at 1 must be the circle ring");
        }
    }
    Ok(truss)
}

/// Two group structures on one carrier with the skew-brace compatibility law
/// `a ∘ (b * c) = (a ∘ b) * a^{-*} * (a ∘ c)`.
#[derive(Debug, Clone)]
pub struct SkewBrace {
    star: GroupView,
    circ: GroupView,
}

impl SkewBrace {
    pub fn new(star: GroupView, circ: GroupView) -> Result<Self> {
        let n = star.size();
        if circ.size() != n {
            return Err(Error::CarrierMismatch {
                left: n,
                right: circ.size(),
            });
        }
        if let Some(w) = scan::first_failure::<3, _>(n, |&[a, b, c]| {
            circ.mul(a, star.mul(b, c))
                == star.mul(star.mul(circ.mul(a, b), star.inv(a)), circ.mul(a, c))
        }) {
            return Err(Error::invalid("skew brace", "compatibility", &w));
        }
        Ok(SkewBrace { star, circ })
    }

    pub fn star(&self) -> &GroupView {
        &self.star
    }

    pub fn circ(&self) -> &GroupView {
        &self.circ
    }

    pub fn size(&self) -> usize {
        self.star.size()
    }
}

/// `[x, y, z] = x * y^{-*} * z` with the circle multiplication. Left
/// distributivity follows from the brace law and is re-verified by the full
/// scan in the constructor.
pub fn near_truss_from_skew_brace(brace: &SkewBrace) -> Result<NearTruss> {
    let n = brace.size();
    let star = brace.star();
    let heap_table =
        TernaryTable::from_fn(n, |x, y, z| star.mul(star.mul(x, star.inv(y)), z))?;
    NearTruss::new(
        heap_table,
        brace.circ().table().clone(),
        Side::Left,
        &Limits::covering(n),
    )
}

/// The self-map algebra of a heap: pointwise bracket, composition as
/// multiplication. Materializing all `n^n` maps is only allowed for `n <= 3`;
/// larger carriers get a seeded sample check instead.
pub struct MapAlgebra<'a> {
    heap: &'a Heap,
}

impl<'a> MapAlgebra<'a> {
    pub fn new(heap: &'a Heap) -> Self {
        MapAlgebra { heap }
    }

    pub fn pointwise(&self, f: &Endomap, g: &Endomap, h: &Endomap) -> Endomap {
        Endomap::from_fn(self.heap.size(), |x| {
            self.heap.get(f.apply(x), g.apply(x), h.apply(x))
        })
        .expect("heap is closed")
    }

    /// All self-maps in lexicographic image order.
    pub fn all_maps(&self) -> Result<Vec<Endomap>> {
        let n = self.heap.size();
        if n > 3 {
            return Err(Error::ResourceLimit {
                operation: "materializing all self-maps",
                size: n,
                cap: 3,
            });
        }
        let count = n.pow(n as u32);
        let mut out = Vec::with_capacity(count);
        for code in 0..count {
            let mut images = Vec::with_capacity(n);
            let mut rest = code;
            for _ in 0..n {
                images.push(rest % n);
                rest /= n;
            }
            images.reverse();
            out.push(Endomap::new(n, images)?);
        }
        out.sort();
        Ok(out)
    }

    /// Materialize `M(X)` as a right near-truss and validate it in full.
    pub fn as_near_truss(&self) -> Result<NearTruss> {
        let maps = self.all_maps()?;
        let k = maps.len();
        let index = |m: &Endomap| maps.binary_search(m).expect("M(X) is closed");
        let ternary = TernaryTable::from_fn(k, |f, g, h| {
            index(&self.pointwise(&maps[f], &maps[g], &maps[h]))
        })?;
        let mul = BinaryTable::from_fn(k, |f, g| index(&maps[f].compose(&maps[g])))?;
        NearTruss::new(ternary, mul, Side::Right, &Limits::covering(k))
    }

    /// First sampled quadruple violating right distributivity
    /// `[f,g,h] ∘ k = [f∘k, g∘k, h∘k]`, or None. The sample sequence is a
    /// pure function of the seed.
    pub fn sampled_right_distributivity(
        &self,
        seed: u64,
        samples: usize,
    ) -> Option<[Endomap; 4]> {
        let n = self.heap.size();
        let mut stream = scan::SampleStream::new(seed);
        let mut random_map = || {
            let images: Vec<Elem> = (0..n).map(|_| stream.below(n)).collect();
            Endomap::new(n, images).expect("in range")
        };
        for _ in 0..samples {
            let (f, g, h, k) = (random_map(), random_map(), random_map(), random_map());
            let lhs = self.pointwise(&f, &g, &h).compose(&k);
            let rhs = self.pointwise(&f.compose(&k), &g.compose(&k), &h.compose(&k));
            if lhs != rhs {
                return Some([f, g, h, k]);
            }
        }
        None
    }
}

/// Outcome of embedding a right near-truss into the self-map near-truss of
/// `Y × Z_m`.
#[derive(Debug, Clone)]
pub struct EmbedReport {
    /// Size of the ambient carrier `|Y| * m`.
    pub ambient_size: usize,
    /// The image maps, one per element of the embedded near-truss.
    pub images: Vec<Endomap>,
    pub injective: bool,
    pub preserves_bracket: bool,
    pub multiplicative: bool,
}

impl EmbedReport {
    pub fn passed(&self) -> bool {
        self.injective && self.preserves_bracket && self.multiplicative
    }
}

/// Embed a right near-truss `Y` into `M(Y × Z_m)` by `y ↦ λ_{(y,1)}`, where
/// `λ_{(y,1)}` sends `(y1, 1)` to `(y·y1, 1)` and everything else to `(y, 1)`.
/// The ambient carrier is `Y × Z_m` with the componentwise bracket and the
/// product multiplication; `m >= 2` so the ambient properly contains
/// `Y × {1}`.
pub fn embed_in_mx(y: &NearTruss, m: usize) -> Result<EmbedReport> {
    y.require_right()?;
    if m < 2 {
        return Err(Error::Unsupported(
            "embedding modulus must be at least 2".into(),
        ));
    }
    let ny = y.size();
    let ambient = ny * m;
    let code = |a: Elem, z: usize| a * m + z;
    // ambient bracket and multiplication, verified as a right near-truss
    let ambient_heap = TernaryTable::from_fn(ambient, |p, q, r| {
        let (pa, pz) = (p / m, p % m);
        let (qa, qz) = (q / m, q % m);
        let (ra, rz) = (r / m, r % m);
        code(y.bracket(pa, qa, ra), (pz + m - qz + rz) % m)
    })?;
    let ambient_mul = BinaryTable::from_fn(ambient, |p, q| {
        code(y.mul(p / m, q / m), (p % m) * (q % m) % m)
    })?;
    let _ambient_truss = NearTruss::new(
        ambient_heap.clone(),
        ambient_mul,
        Side::Right,
        &Limits::covering(ambient),
    )?;

    let image_of = |t: Elem| -> Endomap {
        Endomap::from_fn(ambient, |p| {
            let (pa, pz) = (p / m, p % m);
            if pz == 1 {
                code(y.mul(t, pa), 1)
            } else {
                code(t, 1)
            }
        })
        .expect("in range")
    };
    let images: Vec<Endomap> = (0..ny).map(image_of).collect();

    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    let injective = distinct.len() == ny;

    let pointwise = |f: &Endomap, g: &Endomap, h: &Endomap| -> Endomap {
        Endomap::from_fn(ambient, |p| {
            ambient_heap.get(f.apply(p), g.apply(p), h.apply(p))
        })
        .expect("in range")
    };
    let preserves_bracket = scan::holds_on_all::<3, _>(ny, |&[a, b, c]| {
        images[y.bracket(a, b, c)] == pointwise(&images[a], &images[b], &images[c])
    });
    let multiplicative = scan::holds_on_all::<2, _>(ny, |&[a, b]| {
        images[y.mul(a, b)] == images[a].compose(&images[b])
    });

    Ok(EmbedReport {
        ambient_size: ambient,
        images,
        injective,
        preserves_bracket,
        multiplicative,
    })
}

/// The maps `λ_x^y(z) = [y, xy, xz]` for a fixed base of a left near-truss,
/// with the structural facts cross-checked: the retract-group form
/// `(xy)^{-*} * (xz)` agrees, every map is an endomorphism of `(X, b_y)` and
/// `x ↦ λ_x^y` is a semigroup morphism.
#[derive(Debug, Clone)]
pub struct LambdaReport {
    pub maps: Vec<Endomap>,
    pub formulas_agree: bool,
    pub group_endomorphisms: bool,
    pub semigroup_morphism: bool,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.formulas_agree && self.group_endomorphisms && self.semigroup_morphism
    }
}

pub fn lambda_action(x: &NearTruss, y: Elem) -> Result<LambdaReport> {
    x.require_left()?;
    x.heap().table().check_element(y)?;
    let n = x.size();
    let group = x.heap().retract_group(y)?;
    let maps: Vec<Endomap> = (0..n)
        .map(|u| {
            Endomap::from_fn(n, |z| x.bracket(y, x.mul(u, y), x.mul(u, z))).expect("closed")
        })
        .collect();
    let formulas_agree = scan::holds_on_all::<2, _>(n, |&[u, z]| {
        maps[u].apply(z) == group.mul(group.inv(x.mul(u, y)), x.mul(u, z))
    });
    let group_endomorphisms = scan::holds_on_all::<3, _>(n, |&[u, z, w]| {
        maps[u].apply(group.mul(z, w)) == group.mul(maps[u].apply(z), maps[u].apply(w))
    });
    let semigroup_morphism = scan::holds_on_all::<2, _>(n, |&[u, t]| {
        maps[x.mul(u, t)] == maps[u].compose(&maps[t])
    });
    Ok(LambdaReport {
        maps,
        formulas_agree,
        group_endomorphisms,
        semigroup_morphism,
    })
}

/// Validate `(add, mul)` as a left near-ring: a (not necessarily abelian)
/// group, an associative multiplication and `z(x + y) = zx + zy`.
pub fn validate_left_near_ring(add: &GroupView, mul: &BinaryTable) -> ValidationReport {
    let n = add.size();
    let mut report = ValidationReport::new("left near-ring");
    report.record(
        "mul_associativity",
        scan::first_failure::<3, _>(n, |&[x, y, z]| {
            mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
        })
        .map(|w| w.to_vec()),
    );
    report.record(
        "left_distributivity",
        scan::first_failure::<3, _>(n, |&[z, x, y]| {
            mul.get(z, add.mul(x, y)) == add.mul(mul.get(z, x), mul.get(z, y))
        })
        .map(|w| w.to_vec()),
    );
    report
}

/// What the original multiplication looks like at the chosen base.
#[derive(Debug, Clone)]
pub struct InducedNearRing {
    /// `m_y(x, z) = [y, xy, xz]`.
    pub table: BinaryTable,
    /// `(X, b_y, m_y)` as a left near-ring. Left distributivity always
    /// holds; plain associativity of `m_y` can fail away from right-zero
    /// bases, so this report is informative rather than a guarantee.
    pub near_ring_report: ValidationReport,
    /// `m_y(x·t, z) = m_y(x, m_y(t, z))`: composition along the original
    /// product, which is what the λ-morphism law actually provides.
    pub mixed_associativity: bool,
    /// `x · y = y` for every x; when true, `(X, b_y, ·)` itself is validated
    /// as a left near-ring.
    pub base_is_right_zero: bool,
    pub original_near_ring_report: Option<ValidationReport>,
    /// The multiplication is a group with identity `y`; when true the pair
    /// `((X, b_y), (X, ·))` is validated as a skew brace.
    pub base_is_mul_identity: bool,
    pub skew_brace_valid: Option<bool>,
}

/// Build the induced multiplication `m_y` at a base and classify the original
/// multiplication there.
pub fn induced_near_ring(x: &NearTruss, y: Elem) -> Result<InducedNearRing> {
    x.require_left()?;
    x.heap().table().check_element(y)?;
    let n = x.size();
    let group = x.heap().retract_group(y)?;
    let table = BinaryTable::from_fn(n, |u, z| x.bracket(y, x.mul(u, y), x.mul(u, z)))?;
    let near_ring_report = validate_left_near_ring(&group, &table);
    let mixed_associativity = scan::holds_on_all::<3, _>(n, |&[u, t, z]| {
        table.get(x.mul(u, t), z) == table.get(u, table.get(t, z))
    });

    let base_is_right_zero = (0..n).all(|u| x.mul(u, y) == y);
    let original_near_ring_report =
        base_is_right_zero.then(|| validate_left_near_ring(&group, x.mul_table()));

    let mul_group = GroupView::from_table(x.mul_table().clone()).ok();
    let base_is_mul_identity = mul_group.as_ref().is_some_and(|g| g.identity() == y);
    let skew_brace_valid = if base_is_mul_identity {
        let circ = mul_group.expect("checked above");
        Some(SkewBrace::new(group.clone(), circ).is_ok())
    } else {
        None
    };

    Ok(InducedNearRing {
        table,
        near_ring_report,
        mixed_associativity,
        base_is_right_zero,
        original_near_ring_report,
        base_is_mul_identity,
        skew_brace_valid,
    })
}

/// The endomorphism truss of an abelian heap: all heap endomorphisms under
/// the pointwise bracket and composition.
#[derive(Debug, Clone)]
pub struct EndoTruss {
    pub endomorphisms: Vec<Endomap>,
    pub truss: NearTruss,
}

pub fn endomorphism_truss(heap: &Heap) -> Result<EndoTruss> {
    if !heap.is_abelian() {
        return Err(Error::Unsupported(
            "endomorphism truss requires an abelian heap".into(),
        ));
    }
    let n = heap.size();
    if n > 4 {
        return Err(Error::ResourceLimit {
            operation: "endomorphism truss materialization",
            size: n,
            cap: 4,
        });
    }
    let endos = heap.endomorphisms();
    let k = endos.len();
    let index = |m: &Endomap| {
        endos
            .binary_search(m)
            .expect("endomorphisms are closed under the truss operations")
    };
    let algebra = MapAlgebra::new(heap);
    let ternary = TernaryTable::from_fn(k, |f, g, h| {
        index(&algebra.pointwise(&endos[f], &endos[g], &endos[h]))
    })?;
    let mul = BinaryTable::from_fn(k, |f, g| index(&endos[f].compose(&endos[g])))?;
    let truss = NearTruss::new(ternary, mul, Side::Both, &Limits::covering(k))?;
    assert!(
        truss.is_truss(),
        "endomorphism algebra of an abelian heap is a truss"
    );
    Ok(EndoTruss {
        endomorphisms: endos,
        truss,
    })
}

/// Left and right regular representations of a truss into its endomorphism
/// truss: μ is a morphism, ρ an antimorphism, and μ(x)(y) = ρ(y)(x).
#[derive(Debug, Clone)]
pub struct MuRhoReport {
    pub mu_maps_are_endomorphisms: bool,
    pub rho_maps_are_endomorphisms: bool,
    pub mu_bracket_morphism: bool,
    pub mu_multiplicative: bool,
    pub rho_bracket_morphism: bool,
    pub rho_antimultiplicative: bool,
    pub compatibility: bool,
}

impl MuRhoReport {
    pub fn passed(&self) -> bool {
        self.mu_maps_are_endomorphisms
            && self.rho_maps_are_endomorphisms
            && self.mu_bracket_morphism
            && self.mu_multiplicative
            && self.rho_bracket_morphism
            && self.rho_antimultiplicative
            && self.compatibility
    }
}

pub fn mu_rho_check(t: &NearTruss) -> Result<MuRhoReport> {
    t.require_truss()?;
    let n = t.size();
    let mu = |x: Elem| Endomap::from_fn(n, |y| t.mul(x, y)).expect("closed");
    let rho = |x: Elem| Endomap::from_fn(n, |y| t.mul(y, x)).expect("closed");
    let mus: Vec<Endomap> = (0..n).map(mu).collect();
    let rhos: Vec<Endomap> = (0..n).map(rho).collect();
    let heap = t.heap();
    let algebra = MapAlgebra::new(heap);
    Ok(MuRhoReport {
        mu_maps_are_endomorphisms: mus.iter().all(|f| heap.is_endomorphism(f)),
        rho_maps_are_endomorphisms: rhos.iter().all(|f| heap.is_endomorphism(f)),
        mu_bracket_morphism: scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
            mus[t.bracket(x, y, z)] == algebra.pointwise(&mus[x], &mus[y], &mus[z])
        }),
        mu_multiplicative: scan::holds_on_all::<2, _>(n, |&[x, y]| {
            mus[t.mul(x, y)] == mus[x].compose(&mus[y])
        }),
        rho_bracket_morphism: scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
            rhos[t.bracket(x, y, z)] == algebra.pointwise(&rhos[x], &rhos[y], &rhos[z])
        }),
        rho_antimultiplicative: scan::holds_on_all::<2, _>(n, |&[x, y]| {
            rhos[t.mul(x, y)] == rhos[y].compose(&rhos[x])
        }),
        compatibility: scan::holds_on_all::<2, _>(n, |&[x, y]| {
            mus[x].apply(y) == rhos[y].apply(x)
        }),
    })
}
