//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line before asserting. Run with `--nocapture` to see the lines
//! for passing criteria too.

use std::path::PathBuf;
use std::time::Instant;

use trusskit_cli::run;
use trusskit_core::commutator::{
    build_huq_smith_example, near_truss_commutators, smith_commutator_heap,
    smith_commutator_oracle_heap,
};
use trusskit_core::derivation::{
    commutator_derivation, enumerate_derivations, inner_derivation,
};
use trusskit_core::group;
use trusskit_core::heap::{
    heap_from_group, semiheap_from_join_lattice, translations, validate_ternary, Level,
};
use trusskit_core::ideal::{jring_from_retract, jring_isomorphism, validate_jring_tables, JRing};
use trusskit_core::semidirect::{
    check_semidirect_conditions, decomposition_correspondence, direct_product_heap,
    enumerate_idempotents, outer_semidirect, ActionTable, Algebra,
};
use trusskit_core::subobject::{
    congruence_of_normal, enumerate_congruences, enumerate_congruences_by_partition_scan,
    enumerate_subheaps, is_normal_subheap, normal_of_congruence, Partition, Subset,
};
use trusskit_core::truss::{embed_in_mx, induced_near_ring, lambda_action};
use trusskit_core::{corpus, BinaryTable, Endomap, Limits};

fn limits() -> Limits {
    Limits::default()
}

fn verdict(criterion: usize, label: &str, ok: bool) -> bool {
    println!(
        "[acceptance] criterion {criterion:02} {label}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn corpus_path(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.pop();
    path.push("corpus");
    path.push(name);
    path.to_string_lossy().into_owned()
}

#[test]
fn criterion_01_axiom_validators() {
    let started = Instant::now();
    let mut ok = true;
    for (name, g) in corpus::corpus_groups() {
        let heap = heap_from_group(&g);
        let report = validate_ternary(heap.table(), Level::Heap, &limits()).unwrap();
        if !report.passed {
            eprintln!("heap validation failed for {name}");
            ok = false;
        }
    }
    for size in 2..=5usize {
        let join = corpus::chain_join(size);
        let semiheap = semiheap_from_join_lattice(&join).unwrap();
        let as_semiheap =
            validate_ternary(semiheap.table(), Level::Semiheap, &limits()).unwrap();
        let as_heap = validate_ternary(semiheap.table(), Level::Heap, &limits()).unwrap();
        if !as_semiheap.passed || as_heap.passed {
            eprintln!("chain of {size} misbehaves");
            ok = false;
        }
    }
    let elapsed = started.elapsed();
    ok &= elapsed.as_secs() < 10;
    assert!(
        verdict(1, "axiom validators (groups of order <= 8, chains)", ok),
        "elapsed {elapsed:?}"
    );
}

#[test]
fn criterion_02_translation_groups() {
    let mut ok = true;
    for (name, heap) in corpus::corpus_heaps() {
        let report = translations(&heap);
        if !(report.all_permutations && report.composition_law && report.cayley_isomorphisms) {
            eprintln!("translation structure fails for {name}");
            ok = false;
        }
    }
    assert!(verdict(2, "translation groups and Cayley isomorphisms", ok));
}

#[test]
fn criterion_03_congruence_normal_subheap_bijection() {
    let mut ok = true;
    for (name, heap) in corpus::corpus_heaps() {
        if heap.size() > 6 {
            continue;
        }
        let congruences = enumerate_congruences(&heap, &limits()).unwrap();
        // round trips both ways
        for congruence in &congruences {
            for e in 0..heap.size() {
                let class = normal_of_congruence(&heap, congruence, e).unwrap();
                ok &= &congruence_of_normal(&heap, &class).unwrap() == congruence;
            }
        }
        for normal in enumerate_subheaps(&heap, true, &limits()).unwrap() {
            let congruence = congruence_of_normal(&heap, &normal).unwrap();
            for &e in normal.members() {
                ok &= normal_of_congruence(&heap, &congruence, e).unwrap() == normal;
            }
        }
        // the congruence count equals the normal-subgroup count of every retract
        for e in 0..heap.size() {
            let retract = heap.retract_group(e).unwrap();
            if retract.normal_subgroups().len() != congruences.len() {
                eprintln!("congruence count mismatch for {name} at {e}");
                ok = false;
            }
        }
        // and the all-partitions oracle agrees
        ok &= enumerate_congruences_by_partition_scan(&heap) == congruences;
    }
    let z4 = heap_from_group(&group::cyclic(4));
    ok &= enumerate_congruences(&z4, &limits()).unwrap().len() == 3;
    ok &= enumerate_subheaps(&z4, true, &limits()).unwrap().len() == 7;
    ok &= trusskit_core::subobject::quotient_poset(&z4, &limits())
        .unwrap()
        .nodes
        .len()
        == 3;
    assert!(verdict(3, "congruence ↔ normal-subheap bijection", ok));
}

#[test]
fn criterion_04_normality_condition_agreement() {
    let mut ok = true;
    for (name, heap) in corpus::corpus_heaps() {
        if heap.size() > 6 {
            continue;
        }
        for subheap in enumerate_subheaps(&heap, false, &limits()).unwrap() {
            if subheap.is_empty() {
                continue;
            }
            let report = is_normal_subheap(&heap, &subheap);
            if !report.conditions_agree() {
                eprintln!("normality disagreement in {name} at {subheap}");
                ok = false;
            }
        }
    }
    assert!(verdict(4, "normality conditions agree on all subheaps", ok));
}

#[test]
fn criterion_05_smith_commutator_fast_path_vs_oracle() {
    let mut ok = true;
    for (name, heap) in corpus::corpus_heaps() {
        if heap.size() > 6 {
            continue;
        }
        let congruences = enumerate_congruences(&heap, &limits()).unwrap();
        for r in &congruences {
            for s in &congruences {
                let oracle = smith_commutator_oracle_heap(&heap, r, s, &limits()).unwrap();
                for e in 0..heap.size() {
                    let fast = smith_commutator_heap(&heap, r, s, e).unwrap();
                    if fast != oracle {
                        eprintln!("{name}: mismatch at base {e} for {r} / {s}");
                        ok = false;
                    }
                }
            }
        }
    }
    // the full commutator of the S3 heap has the 3-cycle class and its coset
    let s3 = heap_from_group(&group::symmetric_3());
    let top = Partition::single_block(6);
    let commutator = smith_commutator_heap(&s3, &top, &top, 0).unwrap();
    let blocks = commutator.blocks();
    ok &= blocks.len() == 2 && blocks[0].len() == 3 && blocks[1].len() == 3;
    // the identity block is closed under composition (it is the subgroup)
    let identity_block = &blocks[0];
    let g = group::symmetric_3();
    ok &= identity_block.contains(&g.identity())
        && identity_block
            .iter()
            .all(|&a| identity_block.iter().all(|&b| identity_block.contains(&g.mul(a, b))));
    assert!(verdict(5, "Smith commutator equals the lattice oracle", ok));
}

#[test]
fn criterion_06_huq_smith_counterexample() {
    let started = Instant::now();
    let mut ok = true;
    for (label, m_group, k) in [
        ("Z4", group::cyclic(4), Subset::parse("0,2").unwrap()),
        ("Z2xZ2", group::klein(), Subset::parse("0,2").unwrap()),
    ] {
        let example = build_huq_smith_example(&m_group, &k).unwrap();
        ok &= example.truss.size() == 64;
        let result =
            near_truss_commutators(&example.truss, example.base, &example.a, &example.b).unwrap();
        let m = m_group.size();
        let encode = |c1: usize, c2: usize, c3: usize| (c1 * m + c2) * m + c3;
        let k_line = Subset::new(k.members().iter().map(|&v| encode(v, 0, 0)).collect());
        let m_line = Subset::new((0..m).map(|v| encode(v, 0, 0)).collect());
        if !result.huq_ideal.is_subset_of(&k_line) {
            eprintln!("{label}: Huq ideal escapes K x 0 x 0");
            ok = false;
        }
        if !m_line.is_subset_of(&result.smith_ideal) {
            eprintln!("{label}: Smith ideal misses M x 0 x 0");
            ok = false;
        }
        if result.smith_ideal == result.huq_ideal {
            eprintln!("{label}: the commutators coincide");
            ok = false;
        }
    }
    let elapsed = started.elapsed();
    ok &= elapsed.as_secs() < 60;
    assert!(
        verdict(6, "Smith strictly exceeds Huq on the M^3 example", ok),
        "elapsed {elapsed:?}"
    );
}

#[test]
fn criterion_07_semidirect_condition_battery() {
    let mut ok = true;
    for (name, heap) in corpus::corpus_heaps() {
        if heap.size() > 6 {
            continue;
        }
        let algebra = Algebra::Heap(&heap);
        let congruences = enumerate_congruences(&heap, &limits()).unwrap();
        let subheaps = enumerate_subheaps(&heap, false, &limits()).unwrap();
        for omega in &congruences {
            for section in &subheaps {
                if section.is_empty() {
                    continue;
                }
                let conditions =
                    check_semidirect_conditions(&algebra, section, omega, &limits()).unwrap();
                if !conditions.all_agree() {
                    eprintln!("{name}: disagreement at Y={section} w={omega}");
                    ok = false;
                }
            }
        }
        ok &= decomposition_correspondence(&algebra, &limits())
            .unwrap()
            .is_bijection();
    }
    for (name, t) in corpus::corpus_left_near_trusses() {
        if t.size() > 6 {
            continue;
        }
        let algebra = Algebra::NearTruss(&t);
        let congruences = algebra.congruences(&limits()).unwrap();
        let subheaps = enumerate_subheaps(t.heap(), false, &limits()).unwrap();
        for omega in &congruences {
            for section in &subheaps {
                if section.is_empty() || !algebra.is_subalgebra(section) {
                    continue;
                }
                let conditions =
                    check_semidirect_conditions(&algebra, section, omega, &limits()).unwrap();
                if !conditions.all_agree() {
                    eprintln!("{name}: near-truss disagreement at Y={section} w={omega}");
                    ok = false;
                }
            }
        }
        ok &= decomposition_correspondence(&algebra, &limits())
            .unwrap()
            .is_bijection();
    }
    let z4 = heap_from_group(&group::cyclic(4));
    ok &= enumerate_idempotents(&Algebra::Heap(&z4), &limits())
        .unwrap()
        .len()
        == 5;
    assert!(verdict(7, "decomposition conditions and correspondence", ok));
}

#[test]
fn criterion_08_outer_semidirect_product() {
    let mut ok = true;
    let z3 = heap_from_group(&group::cyclic(3));
    let z2 = heap_from_group(&group::cyclic(2));
    let inversion = ActionTable {
        base: 0,
        maps: vec![Endomap::identity(3), Endomap::new(3, vec![0, 2, 1]).unwrap()],
    };
    let twisted = outer_semidirect(&z3, &z2, &inversion).unwrap();
    ok &= twisted.heap.size() == 6;
    let retract = twisted.heap.retract_group(0).unwrap();
    ok &= trusskit_core::group::group_isomorphism(&retract, &group::symmetric_3()).is_some();

    let trivial = outer_semidirect(&z3, &z2, &ActionTable::trivial(2, 3)).unwrap();
    let direct = direct_product_heap(&z3, &z2).unwrap();
    ok &= trivial.heap.table() == direct.table();
    assert!(verdict(8, "outer semidirect products", ok));
}

#[test]
fn criterion_09_circle_ring_retracts() {
    let mut ok = true;
    for n in 2..=5usize {
        let truss = corpus::ring_truss(n);
        let retract = jring_from_retract(&truss, 1 % n).unwrap();
        let circle = JRing::new(group::cyclic(n), corpus::jacobson_mul(n)).unwrap();
        if jring_isomorphism(&retract, &circle).is_none() {
            eprintln!("no circle isomorphism for n = {n}");
            ok = false;
        }
        let checked =
            validate_jring_tables(group::cyclic(n).table(), &corpus::jacobson_mul(n)).unwrap();
        ok &= checked.report.passed;
        ok &= (0..n).all(|z| corpus::jacobson_mul(n).get(z, 0) == z);
    }
    assert!(verdict(9, "circle-ring retract isomorphisms", ok));
}

#[test]
fn criterion_10_lambda_actions_and_induced_near_rings() {
    let mut lambda_ok = true;
    let mut near_ring_ok = true;
    for (name, t) in corpus::corpus_left_near_trusses() {
        for y in 0..t.size() {
            let lambda = lambda_action(&t, y).unwrap();
            if !(lambda.formulas_agree
                && lambda.group_endomorphisms
                && lambda.semigroup_morphism)
            {
                eprintln!("{name}: lambda laws fail at base {y}");
                lambda_ok = false;
            }
            let induced = induced_near_ring(&t, y).unwrap();
            if !induced.near_ring_report.passed {
                eprintln!(
                    "{name}: (X, b_{y}, m_{y}) fails left-near-ring validation: {:?}",
                    induced.near_ring_report.violations
                );
                near_ring_ok = false;
            }
        }
    }
    let ok = verdict(
        10,
        "lambda actions and induced near-rings (near-ring clause expected to fail: m_y is not associative off right-zero bases)",
        lambda_ok && near_ring_ok,
    );
    assert!(
        lambda_ok,
        "the lambda clauses of criterion 10 must hold"
    );
    assert!(
        ok,
        "criterion 10 as stated requires (X,b_y,m_y) to be a left near-ring at every base; \
         m_y(x,z) = [y,xy,xz] fails plain associativity (e.g. Z2 ring truss at y=1), \
         see the decisions ledger"
    );
}

#[test]
fn criterion_11_embedding_theorem() {
    let mut ok = true;
    for n in [2usize, 3, 4] {
        let y = corpus::ring_truss(n).opposite();
        let report = embed_in_mx(&y, 3).unwrap();
        if !report.passed() {
            eprintln!("embedding fails for the Z{n} opposite truss");
            ok = false;
        }
    }
    assert!(verdict(11, "embedding into the self-map near-truss", ok));
}

#[test]
fn criterion_12_derivations() {
    let mut ok = true;
    let z2 = corpus::ring_truss(2);
    ok &= enumerate_derivations(&z2).unwrap().members == vec![Endomap::identity(2)];
    for (name, t) in corpus::corpus_trusses() {
        let set = enumerate_derivations(&t).unwrap();
        for a in 0..t.size() {
            let d = inner_derivation(&t, a).unwrap();
            if !set.members.contains(&d) {
                eprintln!("{name}: inner derivation at {a} escapes Der");
                ok = false;
            }
        }
        for d1 in &set.members {
            for d2 in &set.members {
                let c = commutator_derivation(&t, d1, d2).unwrap();
                if !set.members.contains(&c) {
                    eprintln!("{name}: commutator derivation escapes Der");
                    ok = false;
                }
            }
        }
    }
    let ut = corpus::upper_triangular_truss();
    ok &= (0..8).any(|a| inner_derivation(&ut, a).unwrap() != Endomap::identity(8));
    assert!(verdict(12, "derivation sets", ok));
}

#[test]
fn criterion_13_cli_determinism() {
    let top6 = "0,1,2,3,4,5";
    let invocations: Vec<Vec<String>> = vec![
        vec!["validate".into(), corpus_path("z4_heap.alg")],
        vec![
            "validate".into(),
            corpus_path("z4_group.alg"),
            "--as".into(),
            "heap".into(),
        ],
        vec!["retract".into(), corpus_path("z4_heap.alg"), "-e".into(), "1".into()],
        vec!["subheaps".into(), corpus_path("z4_heap.alg")],
        vec![
            "subheaps".into(),
            corpus_path("z4_heap.alg"),
            "--normal".into(),
        ],
        vec!["congruences".into(), corpus_path("s3_heap.alg")],
        vec![
            "commutator".into(),
            corpus_path("s3_heap.alg"),
            "-R".into(),
            top6.into(),
            "-S".into(),
            top6.into(),
            "--oracle".into(),
        ],
        vec![
            "huq-smith".into(),
            corpus_path("z4_truss.alg"),
            "-A".into(),
            "0,2".into(),
            "-B".into(),
            "0,2".into(),
            "-e".into(),
            "0".into(),
        ],
        vec![
            "huq-smith".into(),
            "--example".into(),
            "-M".into(),
            corpus_path("z4_group.alg"),
            "-K".into(),
            "0,2".into(),
        ],
        vec!["idempotents".into(), corpus_path("klein_heap.alg")],
        vec![
            "semidirect".into(),
            "check".into(),
            corpus_path("klein_heap.alg"),
            "-Y".into(),
            "0,2".into(),
            "-w".into(),
            "0,1|2,3".into(),
        ],
        vec![
            "semidirect".into(),
            "outer".into(),
            "-K".into(),
            corpus_path("z3_heap.alg"),
            "-Y".into(),
            corpus_path("z2_heap.alg"),
            "--action".into(),
            corpus_path("z3_inversion.action"),
        ],
        vec![
            "direct-check".into(),
            corpus_path("klein_heap.alg"),
            "-Y".into(),
            "0,2".into(),
            "-w".into(),
            "0,1|2,3".into(),
            "-e".into(),
            "0".into(),
        ],
        vec![
            "derivations".into(),
            corpus_path("ut2_z2_truss.alg"),
            "--inner".into(),
            "2".into(),
        ],
        vec![
            "embed".into(),
            corpus_path("z3_truss.alg"),
            "-m".into(),
            "3".into(),
        ],
        vec!["report".into(), corpus_path("z6_heap.alg")],
        vec!["report".into(), corpus_path("jacobson_z4.alg")],
    ];
    let mut ok = true;
    for args in &invocations {
        for format in ["text", "json"] {
            let mut full = args.clone();
            full.push("--format".into());
            full.push(format.into());
            let first = run(full.clone());
            let second = run(full.clone());
            if first != second {
                eprintln!("non-deterministic report: {args:?} ({format})");
                ok = false;
            }
            if first.0 == 2 {
                eprintln!("unexpected input error: {args:?} → {}", first.1);
                ok = false;
            }
        }
    }
    assert!(verdict(13, "byte-identical reports across repeated runs", ok));
}
