//! Exercises the C ABI through the exported symbols, the way a foreign
//! binding would.

use std::ffi::{CStr, CString};
use std::ptr;

use locclab_ffi::*;

fn last_error() -> String {
    let ptr = locclab_last_error_message();
    if ptr.is_null() {
        return String::new();
    }
    unsafe { CStr::from_ptr(ptr) }.to_string_lossy().into_owned()
}

#[test]
fn named_set_round_trip_and_analysis() {
    unsafe {
        let name = CString::new("bell3").unwrap();
        let mut set: *mut LoccStateSet = ptr::null_mut();
        assert_eq!(
            locclab_state_set_named(name.as_ptr(), &mut set),
            LoccStatus::Ok
        );
        assert_eq!(locclab_state_set_len(set), 3);
        let (mut da, mut db) = (0usize, 0usize);
        locclab_state_set_dims(set, &mut da, &mut db);
        assert_eq!((da, db), (2, 2));

        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(locclab_state_set_to_json(set, &mut json), LoccStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        assert!(text.contains("\"dA\": 2"));

        // Parse the JSON back through the ABI.
        let c_text = CString::new(text).unwrap();
        let mut set2: *mut LoccStateSet = ptr::null_mut();
        assert_eq!(
            locclab_state_set_from_json(c_text.as_ptr(), &mut set2),
            LoccStatus::Ok
        );
        assert_eq!(locclab_state_set_len(set2), 3);
        locclab_string_free(json);

        let mut verdict: *mut LoccVerdict = ptr::null_mut();
        assert_eq!(
            locclab_analyze(set, LoccSide::EitherFirst, 0.0, 42, 0, &mut verdict),
            LoccStatus::Ok
        );
        assert_eq!(
            locclab_verdict_status(verdict),
            LoccVerdictStatus::Indistinguishable
        );
        let mut vjson: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(locclab_verdict_to_json(verdict, &mut vjson), LoccStatus::Ok);
        let vtext = CStr::from_ptr(vjson).to_str().unwrap();
        assert!(vtext.contains("OperatorSpace"));
        locclab_string_free(vjson);

        locclab_verdict_free(verdict);
        locclab_state_set_free(set);
        locclab_state_set_free(set2);
    }
}

#[test]
fn tiling_constructor_and_verdict() {
    unsafe {
        let mut set: *mut LoccStateSet = ptr::null_mut();
        assert_eq!(locclab_state_set_tiling(1, 1, &mut set), LoccStatus::Ok);
        assert_eq!(locclab_state_set_len(set), 11);
        let mut verdict: *mut LoccVerdict = ptr::null_mut();
        assert_eq!(
            locclab_analyze(set, LoccSide::AliceFirst, 1e-9, 42, 8, &mut verdict),
            LoccStatus::Ok
        );
        assert_eq!(
            locclab_verdict_status(verdict),
            LoccVerdictStatus::Indistinguishable
        );
        locclab_verdict_free(verdict);
        locclab_state_set_free(set);
    }
}

#[test]
fn distinguishable_set_reports_zero_status() {
    unsafe {
        let name = CString::new("quad_3x2").unwrap();
        let mut set: *mut LoccStateSet = ptr::null_mut();
        assert_eq!(
            locclab_state_set_named(name.as_ptr(), &mut set),
            LoccStatus::Ok
        );
        let mut verdict: *mut LoccVerdict = ptr::null_mut();
        assert_eq!(
            locclab_analyze(set, LoccSide::EitherFirst, 0.0, 42, 0, &mut verdict),
            LoccStatus::Ok
        );
        assert_eq!(
            locclab_verdict_status(verdict),
            LoccVerdictStatus::Distinguishable
        );
        locclab_verdict_free(verdict);
        locclab_state_set_free(set);
    }
}

#[test]
fn errors_set_messages_and_codes() {
    unsafe {
        let mut set: *mut LoccStateSet = ptr::null_mut();
        // Invalid tiling parameters.
        assert_eq!(locclab_state_set_tiling(2, 1, &mut set), LoccStatus::InvalidInput);
        assert!(set.is_null());
        assert!(last_error().contains("lA"));

        // Unknown name.
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            locclab_state_set_named(bogus.as_ptr(), &mut set),
            LoccStatus::InvalidInput
        );
        assert!(last_error().contains("bogus"));

        // Malformed JSON.
        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            locclab_state_set_from_json(bad.as_ptr(), &mut set),
            LoccStatus::InvalidInput
        );

        // NULL handling.
        assert_eq!(locclab_state_set_len(ptr::null()), 0);
        assert_eq!(
            locclab_verdict_status(ptr::null()),
            LoccVerdictStatus::Undetermined
        );
        assert_eq!(
            locclab_state_set_from_json(ptr::null(), &mut set),
            LoccStatus::NullArgument
        );
        locclab_state_set_free(ptr::null_mut());
        locclab_verdict_free(ptr::null_mut());
        locclab_string_free(ptr::null_mut());

        // Version string is static and non-empty.
        let version = CStr::from_ptr(locclab_version()).to_str().unwrap();
        assert!(!version.is_empty());
    }
}

#[test]
fn counting_bound_is_exposed() {
    assert_eq!(locclab_min_product_bound(2, 2, 3), 2);
    assert_eq!(locclab_min_product_bound(3, 3, 5), 1);
    assert_eq!(locclab_min_product_bound(2, 2, 2), 0);
}

#[test]
fn non_orthogonal_input_is_an_input_error() {
    unsafe {
        let json = CString::new(
            r#"{"dA":2,"dB":2,"states":[
                {"kind":"product","a":[[1.0,0.0],[0.0,0.0]],"b":[[1.0,0.0],[0.0,0.0]]},
                {"kind":"product","a":[[1.0,0.0],[0.0,0.0]],"b":[[1.0,0.0],[0.0,0.0]]}
            ],"labels":[]}"#,
        )
        .unwrap();
        let mut set: *mut LoccStateSet = ptr::null_mut();
        assert_eq!(
            locclab_state_set_from_json(json.as_ptr(), &mut set),
            LoccStatus::Ok
        );
        let mut verdict: *mut LoccVerdict = ptr::null_mut();
        assert_eq!(
            locclab_analyze(set, LoccSide::AliceFirst, 0.0, 42, 0, &mut verdict),
            LoccStatus::InvalidInput
        );
        assert!(last_error().contains("orthogonal"));
        locclab_state_set_free(set);
    }
}
