//! Separate binary: the cap is process wide.

use std::ptr;

use gctk_ffi::*;

#[test]
fn size_cap_is_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gctk_graph_l(14, 2, &mut g), GctkStatus::Ok);
        assert_eq!(gctk_set_size_cap(2), GctkStatus::Ok);
        let mut c = ptr::null_mut();
        let status = gctk_ind(g, &mut c);
        assert_eq!(gctk_set_size_cap(1 << 20), GctkStatus::Ok);
        assert_eq!(status, GctkStatus::SizeLimit);
        gctk_graph_free(g);
    }
}
