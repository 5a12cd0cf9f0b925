#![no_main]
use gausscf::export::parse_theta;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(z) = parse_theta(s) {
        assert!(z.re.is_finite() && z.im.is_finite());
        // Rust's float Display is shortest round-trip
        let lit = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
            format!("{}{}i", z.re, z.im)
        } else {
            format!("{}+{}i", z.re, z.im)
        };
        assert_eq!(parse_theta(&lit).ok(), Some(z), "{lit}");
    }
});
