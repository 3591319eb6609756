//! Regenerates the bundled instance corpus under instances/.

use dihp_lab::csp::{gallery, instance_to_json, Constraint, Instance, Predicate};

fn cons(vars: &[usize], predicate: usize) -> Constraint {
    Constraint { vars: vars.to_vec(), predicate }
}

fn vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("instances");
    std::fs::create_dir_all(&dir).unwrap();

    let eq2_s3 = {
        let table = (0..9).map(|i| i % 3 == i / 3).collect();
        Predicate::new("eq2", 2, 3, table).unwrap()
    };
    let lin2_s3 = {
        let table = (0..9).map(|i| (i % 3 + i / 3) % 3 == 0).collect();
        Predicate::new("lin2", 2, 3, table).unwrap()
    };
    let implies2 = {
        let table = (0..4).map(|i| !(i % 2 == 1 && i / 2 == 0)).collect();
        Predicate::new("implies2", 2, 2, table).unwrap()
    };

    let mut corpus: Vec<(&str, Instance)> = vec![
        ("maxcut-edge", gallery::max_cut_instance(2, &[(0, 1)], 2)),
        ("maxcut-path2", gallery::max_cut_instance(3, &[(0, 1), (1, 2)], 2)),
        ("maxcut-path3", gallery::max_cut_instance(4, &[(0, 1), (1, 2), (2, 3)], 2)),
        ("maxcut-triangle", gallery::max_cut_triangle()),
        ("maxcut-square", gallery::max_cut_instance(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 2)),
        (
            "maxcut-k4",
            gallery::max_cut_instance(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 2),
        ),
        ("maxcut-star3", gallery::max_cut_instance(4, &[(0, 1), (0, 2), (0, 3)], 2)),
        ("maxcut3-edge", gallery::max_cut_instance(2, &[(0, 1)], 3)),
        ("maxcut3-triangle", gallery::max_cut_instance(3, &[(0, 1), (1, 2), (2, 0)], 3)),
        ("e3lin-contradiction", gallery::e3lin_contradiction()),
    ];

    corpus.push((
        "e3lin-chain",
        Instance::new(
            2,
            3,
            vars(5),
            vec![gallery::e3lin(0), gallery::e3lin(1)],
            vec![cons(&[0, 1, 2], 0), cons(&[2, 3, 4], 1)],
        )
        .unwrap(),
    ));
    corpus.push((
        "e3lin-cycle",
        Instance::new(
            2,
            3,
            vars(6),
            vec![gallery::e3lin(0), gallery::e3lin(1)],
            vec![cons(&[0, 1, 2], 0), cons(&[2, 3, 4], 1), cons(&[4, 5, 0], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "e3lin-dense",
        Instance::new(
            2,
            3,
            vars(4),
            vec![gallery::e3lin(0), gallery::e3lin(1)],
            vec![
                cons(&[0, 1, 2], 0),
                cons(&[0, 1, 3], 1),
                cons(&[0, 2, 3], 1),
                cons(&[1, 2, 3], 0),
            ],
        )
        .unwrap(),
    ));
    corpus.push((
        "and2-single",
        Instance::new(2, 2, vars(2), vec![gallery::and_k(2)], vec![cons(&[0, 1], 0)]).unwrap(),
    ));
    corpus.push((
        "and2-pair",
        Instance::new(
            2,
            2,
            vars(3),
            vec![gallery::and_k(2)],
            vec![cons(&[0, 1], 0), cons(&[1, 2], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "or2-triangle",
        Instance::new(
            2,
            2,
            vars(3),
            vec![gallery::or_k(2)],
            vec![cons(&[0, 1], 0), cons(&[1, 2], 0), cons(&[2, 0], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "or3-pair",
        Instance::new(
            2,
            3,
            vars(5),
            vec![gallery::or_k(3)],
            vec![cons(&[0, 1, 2], 0), cons(&[2, 3, 4], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "nae3-single",
        Instance::new(2, 3, vars(3), vec![gallery::nae3()], vec![cons(&[0, 1, 2], 0)]).unwrap(),
    ));
    corpus.push((
        "nae3-pair",
        Instance::new(
            2,
            3,
            vars(4),
            vec![gallery::nae3()],
            vec![cons(&[0, 1, 2], 0), cons(&[1, 2, 3], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "mixed-cut-and",
        Instance::new(
            2,
            2,
            vars(3),
            vec![gallery::cut(2), gallery::and_k(2)],
            vec![cons(&[0, 1], 0), cons(&[1, 2], 1), cons(&[0, 2], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "implies-chain",
        Instance::new(
            2,
            2,
            vars(4),
            vec![implies2],
            vec![cons(&[0, 1], 0), cons(&[1, 2], 0), cons(&[2, 3], 0), cons(&[3, 0], 0)],
        )
        .unwrap(),
    ));
    corpus.push((
        "eq3-path",
        Instance::new(3, 2, vars(3), vec![eq2_s3], vec![cons(&[0, 1], 0), cons(&[1, 2], 0)]).unwrap(),
    ));
    corpus.push((
        "lin3-triangle",
        Instance::new(
            3,
            2,
            vars(3),
            vec![lin2_s3],
            vec![cons(&[0, 1], 0), cons(&[1, 2], 0), cons(&[2, 0], 0)],
        )
        .unwrap(),
    ));

    assert!(corpus.len() >= 20, "corpus must hold at least 20 instances");
    for (name, inst) in &corpus {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, instance_to_json(inst)).unwrap();
        println!("wrote {}", path.display());
    }
}
