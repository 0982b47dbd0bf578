use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use spintensor_ffi::*;

const PRINCIPAL_M5: &str = r#"{"m":5,"pi1":{"sigma":["1/2","1/2"],"t":1.0},"pi2":{"kind":"principal","mu":["1/2","1/2"],"t":0.5},"command":"decompose"}"#;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { tp_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn decompose(job: &str) -> (TpStatus, *mut TpDecomposition) {
    let job = CString::new(job).unwrap();
    let mut dec = ptr::null_mut();
    let status = unsafe { tp_decompose(job.as_ptr(), &mut dec) };
    (status, dec)
}

fn blocks(dec: *const TpDecomposition) -> Vec<(Vec<i64>, u64)> {
    let (mut count, mut rank) = (0usize, 0usize);
    assert_eq!(unsafe { tp_decomposition_shape(dec, &mut count, &mut rank) }, TpStatus::Ok);
    (0..count)
        .map(|i| {
            let mut coords = vec![0i64; rank];
            let mut mult = 0u64;
            let s = unsafe { tp_decomposition_block(dec, i, coords.as_mut_ptr(), rank, &mut mult) };
            assert_eq!(s, TpStatus::Ok);
            (coords, mult)
        })
        .collect()
}

#[test]
fn decomposition_matches_core() {
    let (status, dec) = decompose(PRINCIPAL_M5);
    assert_eq!(status, TpStatus::Ok);
    let got = blocks(dec);

    let job = spintensor::cli::JobSpec::parse(PRINCIPAL_M5).unwrap();
    let want = spintensor::cli::decompose_job(&job, &Default::default()).unwrap();
    let want: Vec<_> = want.blocks.iter().map(|(d, n)| (d.doubled(), *n)).collect();
    assert_eq!(got, want);
    assert!(!got.is_empty());

    unsafe { tp_decomposition_free(dec) };
}

#[test]
fn principal_query_sums_blocks() {
    let job = r#"{"m":5,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"principal","mu":["0","0"],"t":2.0},"command":"decompose"}"#;
    let (status, dec) = decompose(job);
    assert_eq!(status, TpStatus::Ok);
    let mut n = 99u64;
    let phi = [0i64, 0];
    assert_eq!(unsafe { tp_multiplicity_principal(dec, phi.as_ptr(), 2, &mut n) }, TpStatus::Ok);
    assert_eq!(n, 1);
    let phi = [4i64, 4];
    assert_eq!(unsafe { tp_multiplicity_principal(dec, phi.as_ptr(), 2, &mut n) }, TpStatus::Ok);
    assert_eq!(n, 0);

    let a = [0i64, 0, 0];
    assert_eq!(unsafe { tp_multiplicity_discrete(dec, a.as_ptr(), 3, 1, &mut n) }, TpStatus::Ok);
    assert_eq!(unsafe { tp_multiplicity_discrete(dec, a.as_ptr(), 3, 0, &mut n) }, TpStatus::Invalid);
    unsafe { tp_decomposition_free(dec) };
}

#[test]
fn errors_carry_status_and_message() {
    let job = r#"{"m":4,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"discrete","sign":"+","a":["0","0","0"]},"command":"decompose"}"#;
    let (status, dec) = decompose(job);
    assert_eq!(status, TpStatus::Invalid);
    assert!(dec.is_null());
    assert!(last_error().contains("discrete series exist only for Spin(2n,1)"));

    let (status, _) = decompose("{");
    assert_eq!(status, TpStatus::Invalid);

    let mut dec = ptr::null_mut();
    assert_eq!(unsafe { tp_decompose(ptr::null(), &mut dec) }, TpStatus::NullPointer);

    let bad = [0xffu8, 0];
    assert_eq!(unsafe { tp_decompose(bad.as_ptr() as *const c_char, &mut dec) }, TpStatus::Utf8);
}

#[test]
fn small_buffer_is_reported() {
    let (_, dec) = decompose(PRINCIPAL_M5);
    let mut one = [0i64; 1];
    let mut mult = 0u64;
    let s = unsafe { tp_decomposition_block(dec, 0, one.as_mut_ptr(), 1, &mut mult) };
    assert_eq!(s, TpStatus::BufferTooSmall);
    let s = unsafe { tp_decomposition_block(dec, 10_000, one.as_mut_ptr(), 1, &mut mult) };
    assert_eq!(s, TpStatus::Invalid);
    unsafe { tp_decomposition_free(dec) };
}

#[test]
fn run_job_mirrors_cli() {
    let job = CString::new(PRINCIPAL_M5).unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { tp_run_job(job.as_ptr(), &mut out, &mut code) }, TpStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { tp_string_free(out) };
    let direct = spintensor::cli::run_job_str(PRINCIPAL_M5, &Default::default());
    assert_eq!(code, direct.exit_code);
    assert_eq!(text, direct.output);

    let bad = CString::new(r#"{"m":2}"#).unwrap();
    assert_eq!(unsafe { tp_run_job(bad.as_ptr(), &mut out, &mut code) }, TpStatus::Ok);
    assert_eq!(code, 2);
    unsafe { tp_string_free(out) };
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/spintensor.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["tp_decompose", "tp_decomposition_block", "tp_run_job", "TP_STATUS_BUFFER_TOO_SMALL"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler on PATH; syntax check skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
