//! Regenerate the shipped example files under `corpus/`:
//!
//! ```text
//! cargo run -p trusskit-cli --example make_corpus -- corpus
//! ```

use std::path::Path;

use trusskit_cli::format::{serialize_algebra, AlgebraFile, Kind};
use trusskit_core::commutator::build_huq_smith_example;
use trusskit_core::subobject::Subset;
use trusskit_core::{corpus, group};

fn write(dir: &Path, file: &AlgebraFile) {
    let path = dir.join(format!("{}.alg", file.name));
    std::fs::write(&path, serialize_algebra(file)).expect("corpus file written");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "corpus".to_string());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).expect("corpus directory");

    for n in [2usize, 3, 4, 6] {
        let heap = trusskit_core::heap::heap_from_group(&group::cyclic(n));
        write(
            dir,
            &AlgebraFile::from_tables(
                &format!("z{n}_heap"),
                Kind::Heap,
                n,
                vec![("ternary", heap.table().entries().to_vec())],
            ),
        );
        let truss = corpus::ring_truss(n);
        write(
            dir,
            &AlgebraFile::from_tables(
                &format!("z{n}_truss"),
                Kind::Truss,
                n,
                vec![
                    ("ternary", truss.heap().table().entries().to_vec()),
                    ("mul", truss.mul_table().entries().to_vec()),
                ],
            ),
        );
    }

    for (name, g) in [
        ("klein_heap", group::klein()),
        ("s3_heap", group::symmetric_3()),
    ] {
        let heap = trusskit_core::heap::heap_from_group(&g);
        write(
            dir,
            &AlgebraFile::from_tables(
                name,
                Kind::Heap,
                g.size(),
                vec![("ternary", heap.table().entries().to_vec())],
            ),
        );
    }

    write(
        dir,
        &AlgebraFile::from_tables(
            "z4_group",
            Kind::Group,
            4,
            vec![("mul", group::cyclic(4).table().entries().to_vec())],
        ),
    );
    write(
        dir,
        &AlgebraFile::from_tables(
            "z4_ring",
            Kind::Ring,
            4,
            vec![
                ("add", group::cyclic(4).table().entries().to_vec()),
                ("mul", corpus::zn_mul(4).entries().to_vec()),
            ],
        ),
    );

    // join semiheap of the three-element chain
    let join = corpus::chain_join(3);
    let semiheap = trusskit_core::heap::semiheap_from_join_lattice(&join).expect("chain");
    write(
        dir,
        &AlgebraFile::from_tables(
            "chain3_semiheap",
            Kind::Semiheap,
            3,
            vec![("ternary", semiheap.table().entries().to_vec())],
        ),
    );

    write(
        dir,
        &AlgebraFile::from_tables(
            "jacobson_z4",
            Kind::JRing,
            4,
            vec![
                ("add", group::cyclic(4).table().entries().to_vec()),
                ("mul", corpus::jacobson_mul(4).entries().to_vec()),
            ],
        ),
    );

    let brace = corpus::brace_z4_klein();
    write(
        dir,
        &AlgebraFile::from_tables(
            "brace4",
            Kind::SkewBrace,
            4,
            vec![
                ("star", brace.star().table().entries().to_vec()),
                ("circ", brace.circ().table().entries().to_vec()),
            ],
        ),
    );

    let ut = corpus::upper_triangular_truss();
    write(
        dir,
        &AlgebraFile::from_tables(
            "ut2_z2_truss",
            Kind::Truss,
            8,
            vec![
                ("ternary", ut.heap().table().entries().to_vec()),
                ("mul", ut.mul_table().entries().to_vec()),
            ],
        ),
    );

    // the 64-element piecewise-multiplication example over Z4
    let example = build_huq_smith_example(&group::cyclic(4), &Subset::parse("0,2").unwrap())
        .expect("example builds");
    write(
        dir,
        &AlgebraFile::from_tables(
            "m3_z4_neartruss",
            Kind::NearTrussLeft,
            64,
            vec![
                ("ternary", example.truss.heap().table().entries().to_vec()),
                ("mul", example.truss.mul_table().entries().to_vec()),
            ],
        ),
    );

    // inversion action of Z2 on Z3, for the outer semidirect product
    let action = trusskit_core::semidirect::ActionTable {
        base: 0,
        maps: vec![
            trusskit_core::Endomap::identity(3),
            trusskit_core::Endomap::new(3, vec![0, 2, 1]).unwrap(),
        ],
    };
    let path = dir.join("z3_inversion.action");
    std::fs::write(&path, trusskit_cli::action::serialize_action(&action, 3))
        .expect("action file written");
    println!("wrote {}", path.display());
}
