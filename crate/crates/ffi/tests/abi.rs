use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ticketry_ffi::*;

const CHAIN: &str = r#"
[[nodes]]
id = "a"
[[nodes]]
id = "b"
[[nodes]]
id = "c"

[[edges]]
from = "a"
to = "b"
length = 1.0
[[edges]]
from = "b"
to = "c"
length = 1.0

[[zones]]
id = "A"
nodes = ["a", "b"]
[[zones]]
id = "C"
nodes = ["c"]

[fare]
type = "basic-zone"
prices = [2.0, 3.0]
"#;

fn parse(text: &str) -> (TkStatus, *mut TkInstance) {
    let src = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let status = unsafe { tk_instance_parse(src.as_ptr(), &mut inst) };
    (status, inst)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tk_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn route_and_price_through_handles() {
    let (status, inst) = parse(CHAIN);
    assert_eq!(status, TkStatus::Ok);
    let (a, c) = (CString::new("a").unwrap(), CString::new("c").unwrap());
    let mut route = ptr::null_mut();
    unsafe {
        assert_eq!(tk_route(inst, a.as_ptr(), c.as_ptr(), false, &mut route), TkStatus::Ok);
        assert_eq!(tk_route_price(route), 3.0);
        assert_eq!(tk_route_zone_count(route), 2);
        let ids: Vec<String> = (0..tk_route_len(route))
            .map(|i| CStr::from_ptr(tk_route_node(route, i)).to_string_lossy().into_owned())
            .collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert!(tk_route_node(route, 3).is_null());
        tk_route_free(route);

        let b = CString::new("b").unwrap();
        let walk = [a.as_ptr(), b.as_ptr()];
        let mut price = 0.0;
        assert_eq!(tk_price_walk(inst, walk.as_ptr(), walk.len(), &mut price), TkStatus::Ok);
        assert_eq!(price, 2.0);
        tk_instance_free(inst);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let (status, inst) = parse("[[nodes]\n");
    assert_eq!(status, TkStatus::Parse);
    assert!(inst.is_null());
    assert!(!last_error().is_empty());

    let (_, inst) = parse(CHAIN);
    let (a, z) = (CString::new("a").unwrap(), CString::new("zz").unwrap());
    let mut route = ptr::null_mut();
    unsafe {
        assert_eq!(tk_route(inst, a.as_ptr(), z.as_ptr(), false, &mut route), TkStatus::InvalidQuery);
        assert!(last_error().contains("zz"));
        assert_eq!(tk_route(inst, ptr::null(), z.as_ptr(), false, &mut route), TkStatus::InvalidArgument);
        let walk = [a.as_ptr(), z.as_ptr()];
        let mut price = 0.0;
        assert_eq!(tk_price_walk(inst, walk.as_ptr(), 2, &mut price), TkStatus::InvalidQuery);
        tk_instance_free(inst);
        tk_instance_free(ptr::null_mut());
        tk_route_free(ptr::null_mut());
    }
}

#[test]
fn audit_report_is_json() {
    let (_, inst) = parse(CHAIN);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(tk_audit_json(inst, 4, 0, &mut out), TkStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        tk_string_free(out);
        tk_instance_free(inst);
        assert!(text.starts_with('{'));
        assert!(text.contains("\"no-stopover\""));
        assert!(text.contains("\"max_edges\":4"));
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let lib = target_dir().join("libticketry_ffi.a");
    if !lib.exists() {
        // only built alongside the rlib when the whole package is built
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("route.c");
    std::fs::write(
        &src,
        format!(
            r#"#include <stdio.h>
#include "ticketry.h"
int main(void) {{
    static const char *toml = "{}";
    TkInstance *inst = NULL;
    if (tk_instance_parse(toml, &inst) != TK_STATUS_OK) return 10;
    TkRoute *route = NULL;
    if (tk_route(inst, "a", "c", false, &route) != TK_STATUS_OK) return 11;
    printf("%g %zu %s\n", tk_route_price(route), tk_route_len(route), tk_route_node(route, 1));
    tk_route_free(route);
    tk_instance_free(inst);
    return 0;
}}
"#,
            CHAIN.replace('"', "\\\"").replace('\n', "\\n")
        ),
    )
    .unwrap();
    let bin = dir.join("route");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3 3 b\n");
}
