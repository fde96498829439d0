use mxik_core::catalog::{load_robot, motion, random_motions, ROBOT_NAMES};
use mxik_core::kinematics::forward_kinematics;
use mxik_core::JointKind;

#[test]
fn motions_can_be_regenerated_one_at_a_time() {
    for name in ROBOT_NAMES {
        let m = load_robot(name).unwrap();
        let all = random_motions(&m, 25, 7).unwrap();
        for k in [0, 3, 24] {
            assert_eq!(motion(&m, 7, k), all[k]);
        }
        assert_ne!(all[0].q0, all[1].q0);
        assert_ne!(random_motions(&m, 1, 8).unwrap()[0], all[0]);
    }
}

#[test]
fn sampled_joints_respect_ranges_and_targets_are_reachable() {
    for name in ROBOT_NAMES {
        let m = load_robot(name).unwrap();
        for spec in random_motions(&m, 50, 1).unwrap() {
            for q in [&spec.q0, &spec.q_target] {
                for (row, &v) in m.rows().iter().zip(q.iter()) {
                    assert!(row.range.min <= v && v <= row.range.max);
                }
            }
            assert_eq!(forward_kinematics(&m, &spec.q_target).unwrap(), spec.target);
        }
    }
}

#[test]
fn catalog_dimensions() {
    let dims = [("planar3", 3, 2), ("scara4", 4, 6), ("stanford5", 5, 6), ("stanford6", 6, 6), ("gp66plus1", 7, 6), ("wam7", 7, 6)];
    for (name, dof, rows) in dims {
        let m = load_robot(name).unwrap();
        assert_eq!((m.dof(), m.task().len()), (dof, rows), "{name}");
    }
    let prismatic = |n: &str| load_robot(n).unwrap().joint_kinds().filter(|k| *k == JointKind::Prismatic).count();
    assert_eq!(prismatic("wam7"), 0);
    assert_eq!(prismatic("planar3"), 1);
}
