use invgeom::io::{partition_from_json, partition_to_json};
use invgeom::partitions::{
    image_partition, mixed_partition_type, nrc_partition, verify_partition, PartKind,
};
use invgeom::spreads::{desarguesian_line_spread, HalfSpreadFrame};
use invgeom::{Tower, TowerConfig};

#[test]
fn construct_serialize_verify() {
    for (p, e, k) in [(3, 1, 2), (2, 1, 3), (2, 2, 2), (5, 1, 2)] {
        let t = Tower::with_defaults(p, e, 1 << k).unwrap();
        let part = nrc_partition(&t, k).unwrap();
        let text = partition_to_json(&t, &part);
        let (t2, back) = partition_from_json(&text).unwrap();
        assert_eq!(back, part);
        let report = verify_partition(&t2, &back);
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.points, t.point_count());
    }
}

#[test]
fn explicit_moduli_give_valid_partitions() {
    // x^4 + x + 1 instead of the default x^4 + x^3 + 1
    let config = TowerConfig::with_moduli(
        2,
        1,
        4,
        None,
        Some(vec![vec![1], vec![1], vec![0], vec![0], vec![1]]),
    )
    .unwrap();
    let t = Tower::new(config).unwrap();
    let part = nrc_partition(&t, 2).unwrap();
    assert_eq!(part.count(PartKind::Tuple(3)), 5);
    assert!(verify_partition(&t, &part).is_clean());

    // GF(9) from x^2 + x + 2 over F_3
    let config = TowerConfig::with_moduli(3, 2, 4, Some(vec![2, 1, 1]), None).unwrap();
    let t = Tower::new(config).unwrap();
    let part = nrc_partition(&t, 2).unwrap();
    assert_eq!(part.count(PartKind::Nrc(3)), 82);
    assert!(verify_partition(&t, &part).is_clean());
}

#[test]
fn mixed_partition_types() {
    for p in [2, 3, 5] {
        let t = Tower::with_defaults(p, 1, 4).unwrap();
        let q = t.q() as usize;
        let d = desarguesian_line_spread(&t).unwrap();
        assert_eq!(mixed_partition_type(&t, &d).unwrap(), q * q + 1);
        assert_eq!(image_partition(&t, &d).unwrap().line_count(), q * q + 1);
        let frame = HalfSpreadFrame::new(&t).unwrap();
        let twisted = frame.phi_spread().unwrap();
        let r = mixed_partition_type(&t, &twisted).unwrap();
        let part = image_partition(&t, &twisted).unwrap();
        assert_eq!(part.line_count(), r);
        assert!(verify_partition(&t, &part).is_clean());
    }
}
