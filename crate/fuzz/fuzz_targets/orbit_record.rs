#![no_main]
use gausscf::export::decode_orbit_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = decode_orbit_line(s) {
        let again = decode_orbit_line(&r.to_line()).expect("re-encoded record decodes");
        assert_eq!(again, r);
    }
});
