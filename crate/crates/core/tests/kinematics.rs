use mxik_core::catalog::{load_robot, ROBOT_NAMES};
use mxik_core::kinematics::{
    analytical_jacobian, forward_kinematics, geometric_jacobian, numerical_jacobian, rescale_units, JointKind,
    LengthUnit, RobotModel,
};
use mxik_core::JointVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M4 = [[f64; 4]; 4];

fn mul(a: &M4, b: &M4) -> M4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn rot_z(t: f64) -> M4 {
    let (s, c) = t.sin_cos();
    [[c, -s, 0.0, 0.0], [s, c, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
}

fn rot_x(t: f64) -> M4 {
    let (s, c) = t.sin_cos();
    [[1.0, 0.0, 0.0, 0.0], [0.0, c, -s, 0.0], [0.0, s, c, 0.0], [0.0, 0.0, 0.0, 1.0]]
}

fn trans(x: f64, z: f64) -> M4 {
    [[1.0, 0.0, 0.0, x], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, z], [0.0, 0.0, 0.0, 1.0]]
}

/// Product of elementary transforms, one factor at a time.
fn oracle_fk(model: &RobotModel, q: &[f64]) -> M4 {
    let mut t = trans(0.0, 0.0);
    for (row, &v) in model.rows().iter().zip(q) {
        let (theta, d) = match row.kind {
            JointKind::Revolute => (row.theta + v, row.d),
            JointKind::Prismatic => (row.theta, row.d + v),
        };
        for f in [rot_z(theta), trans(0.0, d), trans(row.a, 0.0), rot_x(row.alpha)] {
            t = mul(&t, &f);
        }
    }
    t
}

fn sample(model: &RobotModel, rng: &mut ChaCha8Rng) -> JointVector {
    JointVector::from_iterator(model.dof(), model.rows().iter().map(|r| rng.random_range(r.range.min..=r.range.max)))
}

#[test]
fn forward_kinematics_matches_elementary_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ROBOT_NAMES {
        let model = load_robot(name).unwrap();
        for _ in 0..50 {
            let q = sample(&model, &mut rng);
            let pose = forward_kinematics(&model, &q).unwrap();
            let t = oracle_fk(&model, q.as_slice());
            for (k, row) in t.iter().take(3).enumerate() {
                assert!((pose.position[k] - row[3]).abs() < 1e-9, "{name} position {k}");
            }
            let r = pose.rotation();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((r[(i, j)] - t[i][j]).abs() < 1e-12, "{name} rotation ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn planar3_closed_form() {
    let model = load_robot("planar3").unwrap();
    let q0 = JointVector::zeros(3);
    assert_eq!(forward_kinematics(&model, &q0).unwrap().position, [2100.0, 0.0, 0.0]);
    let (t1, t2, d3) = (0.4f64, -1.1f64, -250.0);
    let p = forward_kinematics(&model, &JointVector::from_vec(vec![t1, t2, d3])).unwrap().position;
    let t12 = t1 + t2;
    let want = [
        1000.0 * t1.cos() + 1100.0 * t12.cos() + d3 * t12.sin(),
        1000.0 * t1.sin() + 1100.0 * t12.sin() - d3 * t12.cos(),
    ];
    assert!((p[0] - want[0]).abs() < 1e-9 && (p[1] - want[1]).abs() < 1e-9);
}

#[test]
fn scara4_home_pose() {
    let model = load_robot("scara4").unwrap();
    let pose = forward_kinematics(&model, &JointVector::zeros(4)).unwrap();
    let [x, y, z] = pose.position;
    assert!((x - 400.0).abs() < 1e-9 && y.abs() < 1e-9);
    // d1 = 400 up, then the flipped second link points d4 = 150 down
    assert!((z - 250.0).abs() < 1e-9, "{z}");
}

fn in_metres(name: &str) -> RobotModel {
    let m = load_robot(name).unwrap();
    rescale_units(&m, &JointVector::zeros(m.dof()), LengthUnit::M).unwrap().0
}

#[test]
fn geometric_position_rows_match_forward_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ROBOT_NAMES {
        let model = in_metres(name);
        for _ in 0..100 {
            let q = sample(&model, &mut rng);
            let g = geometric_jacobian(&model, &q).unwrap();
            let n = numerical_jacobian(&model, &q, 1e-6).unwrap();
            for (r, c) in g.rows.iter().enumerate().filter(|(_, c)| c.is_position()) {
                for j in 0..model.dof() {
                    let diff = (g.matrix[(r, j)] - n.matrix[(r, j)]).abs();
                    assert!(diff < 1e-4, "{name} {c:?} joint {j}: {diff}");
                }
            }
        }
    }
}

#[test]
fn analytical_matches_numerical_away_from_gimbal_lock() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for name in ROBOT_NAMES {
        let model = in_metres(name);
        let mut checked = 0;
        while checked < 30 {
            let q = sample(&model, &mut rng);
            let pitch = forward_kinematics(&model, &q).unwrap().orientation[1];
            if pitch.abs() > 1.4 {
                continue;
            }
            let a = analytical_jacobian(&model, &q).unwrap();
            let n = numerical_jacobian(&model, &q, 1e-7).unwrap();
            let diff = (&a.matrix - &n.matrix).amax();
            assert!(diff < 1e-4, "{name}: {diff}");
            checked += 1;
        }
    }
}

#[test]
fn jacobian_follows_unit_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ROBOT_NAMES {
        let m = in_metres(name);
        let q = sample(&m, &mut rng);
        let (mm, q_mm) = rescale_units(&m, &q, LengthUnit::Mm).unwrap();
        let j = geometric_jacobian(&m, &q).unwrap();
        let j_mm = geometric_jacobian(&mm, &q_mm).unwrap();
        for (r, comp) in j.rows.iter().enumerate() {
            for (c, kind) in j.cols.iter().enumerate() {
                let row = if comp.is_position() { 1000.0 } else { 1.0 };
                let col = if *kind == JointKind::Prismatic { 1e-3 } else { 1.0 };
                let want = row * j.matrix[(r, c)] * col;
                assert!((j_mm.matrix[(r, c)] - want).abs() <= 1e-9 * (1.0 + want.abs()), "{name} ({r},{c})");
            }
        }
    }
}

#[test]
fn rescaling_preserves_kinds_and_angles() {
    for name in ROBOT_NAMES {
        let m = load_robot(name).unwrap();
        let q = JointVector::from_iterator(m.dof(), (0..m.dof()).map(|i| 0.1 * i as f64 + 0.2));
        for u in LengthUnit::ALL {
            let (r, qr) = rescale_units(&m, &q, u).unwrap();
            let k = LengthUnit::Mm.factor_to(u);
            for ((a, b), (va, vb)) in m.rows().iter().zip(r.rows()).zip(q.iter().zip(qr.iter())) {
                assert_eq!(a.kind, b.kind);
                assert_eq!((a.theta, a.alpha), (b.theta, b.alpha));
                assert_eq!(b.d, a.d * k);
                match a.kind {
                    JointKind::Revolute => assert_eq!((va, a.range), (vb, b.range)),
                    JointKind::Prismatic => assert_eq!(*vb, va * k),
                }
            }
            let p = forward_kinematics(&m, &q).unwrap();
            let pr = forward_kinematics(&r, &qr).unwrap();
            for i in 0..3 {
                assert!((pr.position[i] - p.position[i] * k).abs() < 1e-9 * (1.0 + p.position[i].abs()));
                assert!((pr.orientation[i] - p.orientation[i]).abs() < 1e-12);
            }
        }
    }
}
