// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::ffi::CStr;
use std::ptr;

use hypersample_ffi::*;

unsafe fn instance(d: &[usize], k: usize) -> *mut HsInstance {
    let mut inst = ptr::null_mut();
    assert_eq!(
        hs_instance_new(d.as_ptr(), d.len(), k, &mut inst),
        HsStatus::Ok
    );
    inst
}

unsafe fn last_error() -> String {
    CStr::from_ptr(hs_last_error())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn sample_and_copy_edges() {
    unsafe {
        let inst = instance(&[2, 2, 2, 1, 1, 1], 3);
        assert_eq!(hs_instance_edge_count(inst), 3);
        let mut sampler = ptr::null_mut();
        assert_eq!(hs_sampler_config_new(inst, &mut sampler), HsStatus::Ok);

        let mut h = ptr::null_mut();
        let mut iterations = 0u64;
        assert_eq!(
            hs_sample(sampler, 7, 0, 0, &mut h, &mut iterations),
            HsStatus::Ok
        );
        assert!(iterations >= 1);
        assert_eq!(hs_hypergraph_edge_count(h), 3);
        assert_eq!(hs_hypergraph_k(h), 3);

        let mut buf = vec![0usize; 9];
        assert_eq!(
            hs_hypergraph_copy_edges(h, buf.as_mut_ptr(), 9),
            HsStatus::Ok
        );
        let mut degree = [0usize; 6];
        for &v in &buf {
            assert!((1..=6).contains(&v));
            degree[v - 1] += 1;
        }
        assert_eq!(degree, [2, 2, 2, 1, 1, 1]);
        assert_eq!(
            hs_hypergraph_copy_edges(h, buf.as_mut_ptr(), 8),
            HsStatus::BufferTooSmall
        );

        // Same seed and stream, same hypergraph.
        let mut h2 = ptr::null_mut();
        assert_eq!(
            hs_sample(sampler, 7, 0, 0, &mut h2, ptr::null_mut()),
            HsStatus::Ok
        );
        let mut buf2 = vec![0usize; 9];
        hs_hypergraph_copy_edges(h2, buf2.as_mut_ptr(), 9);
        assert_eq!(buf, buf2);

        hs_hypergraph_free(h);
        hs_hypergraph_free(h2);
        hs_sampler_free(sampler);
        hs_instance_free(inst);
    }
}

#[test]
fn invalid_instance_sets_error() {
    unsafe {
        let d = [1usize, 1];
        let mut inst = ptr::null_mut();
        assert_eq!(
            hs_instance_new(d.as_ptr(), 2, 3, &mut inst),
            HsStatus::InvalidInput
        );
        assert!(inst.is_null());
        assert!(last_error().contains("not divisible"));
        assert_eq!(
            hs_instance_new(ptr::null(), 3, 3, &mut inst),
            HsStatus::NullPointer
        );
    }
}

#[test]
fn capped_sampling_reports_fail() {
    unsafe {
        let inst = instance(&[2, 2, 2], 3);
        let mut sampler = ptr::null_mut();
        assert_eq!(hs_sampler_switch_new(inst, 10, &mut sampler), HsStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(
            hs_sample(sampler, 1, 0, 4, &mut h, ptr::null_mut()),
            HsStatus::Fail
        );
        assert!(h.is_null());
        assert!(last_error().contains("4 iterations"));
        hs_sampler_free(sampler);
        hs_instance_free(inst);
    }
}

#[test]
fn oracle_and_counts() {
    unsafe {
        let inst = instance(&[1; 6], 3);
        let (mut b, mut bs, mut hc) = (0u64, 0u64, 0u64);
        assert_eq!(
            hs_enumerate_counts(inst, 1_000_000, &mut b, &mut bs, &mut hc),
            HsStatus::Ok
        );
        assert_eq!((b, bs, hc), (20, 20, 10));
        assert_eq!(
            hs_enumerate_counts(inst, 3, &mut b, ptr::null_mut(), ptr::null_mut()),
            HsStatus::TooLarge
        );

        let mut sampler = ptr::null_mut();
        assert_eq!(
            hs_sampler_oracle_new(inst, 1_000_000, &mut sampler),
            HsStatus::Ok
        );
        let mut h = ptr::null_mut();
        assert_eq!(
            hs_sample(sampler, 3, 5, 0, &mut h, ptr::null_mut()),
            HsStatus::Ok
        );
        assert_eq!(hs_hypergraph_edge_count(h), 2);
        hs_hypergraph_free(h);
        hs_sampler_free(sampler);
        hs_instance_free(inst);
    }
}

#[test]
fn bounds_json() {
    unsafe {
        let inst = instance(&[1; 6], 3);
        let mut s = ptr::null_mut();
        assert_eq!(hs_bounds_json(inst, 0.25, 0.25, &mut s), HsStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        hs_string_free(s);
        assert!(text.contains("\"fpaus_cap\": 4"));
        assert!(text.contains("\"regular_simplicity_lower_bound\": 0.95"));

        assert_eq!(
            hs_bounds_json(inst, f64::NAN, 2.0, &mut s),
            HsStatus::InvalidRegion
        );
        hs_instance_free(inst);
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            hs_sample(ptr::null(), 0, 0, 0, &mut h, ptr::null_mut()),
            HsStatus::NullPointer
        );
        assert_eq!(hs_instance_edge_count(ptr::null()), 0);
        hs_instance_free(ptr::null_mut());
        hs_sampler_free(ptr::null_mut());
        hs_hypergraph_free(ptr::null_mut());
        hs_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(hs_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/hypersample.h"
    ))
    .expect("header is generated by the build script");
    for name in [
        "hs_instance_new",
        "hs_sampler_config_new",
        "hs_sample",
        "hs_hypergraph_copy_edges",
        "hs_bounds_json",
        "hs_enumerate_counts",
        "hs_last_error",
        "HS_STATUS_OK",
        "typedef struct HsInstance HsInstance",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_against_staticlib() {
    use std::path::PathBuf;
    use std::process::Command;

    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args(["build", "-p", "hypersample-ffi"])
        .status()
        .unwrap();
    assert!(status.success());

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/capi-<hash> -> target/debug
    let exe = std::env::current_exe().unwrap();
    let target = exe.ancestors().nth(3).unwrap().join("debug");
    let out = std::env::temp_dir().join(format!("hs_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(format!("-I{}", manifest.join("include").display()))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(target.join("libhypersample_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.ends_with("B=93 B*=90 H=15\n"), "{text}");
}
