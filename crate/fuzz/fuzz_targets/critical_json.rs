#![no_main]
use gausscf::export::decode_critical;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(e) = decode_critical(s) {
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(decode_critical(&text).unwrap(), e);
    }
});
