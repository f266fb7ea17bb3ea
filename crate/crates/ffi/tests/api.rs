use std::ffi::CStr;
use std::ptr;

use ncd_ffi::*;

unsafe fn instance(n: usize, arcs: &[(usize, usize, i64)]) -> *mut NcdInstance {
    let inst = ncd_instance_new(n);
    for &(u, v, w) in arcs {
        assert_eq!(ncd_instance_add_arc(inst, u, v, w), NcdStatus::Ok);
    }
    inst
}

unsafe fn solved(inst: *const NcdInstance, max_k: usize) -> *mut NcdSolution {
    let mut sol = ptr::null_mut();
    assert_eq!(ncd_solve(inst, max_k, &mut sol), NcdStatus::Ok);
    assert!(!sol.is_null());
    sol
}

unsafe fn path(sol: *const NcdSolution, s: usize, t: usize) -> Result<Vec<usize>, NcdStatus> {
    let mut len = 0;
    match ncd_solution_path(sol, s, t, ptr::null_mut(), 0, &mut len) {
        NcdStatus::Ok | NcdStatus::BufferTooSmall => {}
        other => return Err(other),
    }
    let mut buf = vec![0; len];
    match ncd_solution_path(sol, s, t, buf.as_mut_ptr(), buf.len(), &mut len) {
        NcdStatus::Ok => Ok(buf),
        other => Err(other),
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ncd_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn distances_and_paths_match_the_library() {
    let arcs = [(0, 1, 1), (1, 0, -3), (1, 2, 2), (2, 1, -4), (0, 3, 4), (3, 2, 5)];
    let g = ncd::normalize(4, &arcs).unwrap();
    let expected = ncd::solve(&g, &Default::default()).unwrap();
    let expected = expected.solution().unwrap();
    unsafe {
        let inst = instance(4, &arcs);
        let sol = solved(inst, 0);
        assert_eq!(ncd_solution_is_nearly_conservative(sol), 1);
        for s in 0..4 {
            for t in 0..4 {
                let (mut d, mut reach) = (i64::MIN, -1);
                assert_eq!(ncd_solution_distance(sol, s, t, &mut d, &mut reach), NcdStatus::Ok);
                match expected.distance(s, t) {
                    Some(e) => {
                        assert_eq!((reach, d), (1, e));
                        assert_eq!(path(sol, s, t).unwrap(), expected.path(s, t).unwrap().vertices);
                    }
                    None => {
                        assert_eq!(reach, 0);
                        assert_eq!(path(sol, s, t), Err(NcdStatus::NoPath));
                    }
                }
            }
        }
        let (mut d, mut reach) = (0, 0);
        assert_eq!(ncd_solution_distance(sol, 0, 9, &mut d, &mut reach), NcdStatus::OutOfRange);
        assert_eq!(path(sol, 9, 0), Err(NcdStatus::OutOfRange));
        let (mut len, mut w) = (0, 0);
        assert_eq!(ncd_solution_witness(sol, ptr::null_mut(), 0, &mut len, &mut w), NcdStatus::NoWitness);
        ncd_solution_free(sol);
        ncd_instance_free(inst);
    }
}

#[test]
fn rejected_instance_reports_a_cycle() {
    unsafe {
        let inst = instance(3, &[(0, 1, -1), (1, 0, 0), (1, 2, -1), (2, 1, 0), (2, 0, -1), (0, 2, 0)]);
        let sol = solved(inst, 0);
        assert_eq!(ncd_solution_is_nearly_conservative(sol), 0);
        let (mut len, mut w) = (0, 0);
        assert_eq!(ncd_solution_witness(sol, ptr::null_mut(), 0, &mut len, &mut w), NcdStatus::BufferTooSmall);
        let mut buf = vec![0; len];
        assert_eq!(ncd_solution_witness(sol, buf.as_mut_ptr(), len, &mut len, &mut w), NcdStatus::Ok);
        assert_eq!((buf, w), (vec![0, 1, 2], -3));
        let (mut d, mut reach) = (0, 0);
        assert_eq!(ncd_solution_distance(sol, 0, 1, &mut d, &mut reach), NcdStatus::NotNearlyConservative);
        assert_eq!(path(sol, 0, 1), Err(NcdStatus::NotNearlyConservative));
        ncd_solution_free(sol);
        ncd_instance_free(inst);
    }
}

#[test]
fn mixed_edges_and_parsing() {
    unsafe {
        let inst = ncd_instance_new(3);
        assert_eq!(ncd_instance_add_edge(inst, 0, 1, -2), NcdStatus::Ok);
        assert_eq!(ncd_instance_add_arc(inst, 1, 2, 5), NcdStatus::Ok);
        let sol = solved(inst, 0);
        assert_eq!(ncd_solution_is_nearly_conservative(sol), 1);
        assert_eq!(path(sol, 0, 2).unwrap(), vec![0, 1, 2]);
        ncd_solution_free(sol);
        ncd_instance_free(inst);

        let mut parsed = ptr::null_mut();
        assert_eq!(ncd_instance_parse(c"p ncm 2 2\ne 1 2 -3\na 2 1 1\n".as_ptr(), &mut parsed), NcdStatus::Ok);
        let sol = solved(parsed, 0);
        let (mut len, mut w) = (0, 0);
        let mut buf = [0usize; 4];
        assert_eq!(ncd_solution_witness(sol, buf.as_mut_ptr(), 4, &mut len, &mut w), NcdStatus::Ok);
        assert_eq!((&buf[..len], w), (&[0, 1][..], -2));
        ncd_solution_free(sol);
        ncd_instance_free(parsed);

        assert_eq!(ncd_instance_parse(c"p ncd 2 1\na 1 2 z\n".as_ptr(), &mut parsed), NcdStatus::Malformed);
        assert!(parsed.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());
    }
}

#[test]
fn limits_and_bad_arguments() {
    unsafe {
        // two trees joined in one block
        let inst = instance(4, &[(0, 1, 1), (1, 0, -3), (2, 3, 1), (3, 2, -3), (1, 2, 0), (3, 0, 9)]);
        let mut sol = ptr::null_mut();
        assert_eq!(ncd_solve(inst, 1, &mut sol), NcdStatus::LimitExceeded);
        assert!(sol.is_null());
        assert!(!last_error().is_empty());
        ncd_solution_free(solved(inst, 2));
        assert_eq!(ncd_instance_add_arc(inst, 0, 1, 1 << 41), NcdStatus::Malformed);
        ncd_instance_free(inst);

        assert_eq!(ncd_instance_add_arc(ptr::null_mut(), 0, 0, 0), NcdStatus::NullPointer);
        assert_eq!(ncd_solve(ptr::null(), 0, &mut sol), NcdStatus::NullPointer);
        assert_eq!(ncd_solution_is_nearly_conservative(ptr::null()), -1);
        let mut len = 0;
        assert_eq!(ncd_solution_path(ptr::null(), 0, 0, ptr::null_mut(), 0, &mut len), NcdStatus::NullPointer);
        ncd_instance_free(ptr::null_mut());
        ncd_solution_free(ptr::null_mut());
    }
}
