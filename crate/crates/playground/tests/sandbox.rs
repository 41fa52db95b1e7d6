use ezhil_playground::{execute_sandboxed, ExecRequest, ExecResult, Status};
use proptest::prelude::*;

fn exec(program: &str) -> ExecResult {
    execute_sandboxed(&ExecRequest::new(program))
}

#[test]
fn exit_is_reported_in_a_footer() {
    let r = exec("பதிப்பி 1\nexit(3)\nபதிப்பி 2");
    assert_eq!(r.status, Status::Success);
    assert_eq!(r.output, "1\n[exit(3)]\n");
    let r = exec("printf(\"a\")\nexit()");
    assert_eq!(r.output, "a\n[exit(0)]\n");
}

#[test]
fn input_lines_feed_the_age_program() {
    let r = execute_sandboxed(&ExecRequest::new(ezhil::corpus::AGE).with_input(["x", "15"]));
    assert_eq!(r.status, Status::Success);
    assert!(r.output.contains(" 3 "));
    let r = execute_sandboxed(&ExecRequest::new(ezhil::corpus::AGE).with_input(["x"]));
    assert_eq!(r.status, Status::Error);
    assert!(r.error_message.unwrap().contains("input exhausted"));
    // Output produced before the failure is kept.
    assert!(r.output.contains("வணக்கம் திரு x"));
}

#[test]
fn default_seed_is_one() {
    let r = exec("பதிப்பி random() * 2147483647");
    assert_eq!(r.output, "16807.0\n");
}

#[test]
fn parse_errors_carry_a_span() {
    let r = exec("@( 1 < 2 ) ஆனால்\n பதிப்பி 1\n");
    assert_eq!(r.status, Status::Error);
    let msg = r.error_message.unwrap();
    assert!(msg.starts_with("1:1:"), "{msg}");
    assert!(msg.contains("பிழை"));
}

#[test]
fn deep_recursion_is_an_error_not_a_crash() {
    let src = "நிரல்பாகம் f(n)\n பின்கொடு f(n + 1)\nமுடி\nf(0)";
    let r = std::thread::spawn(move || exec(src)).join().unwrap();
    assert_eq!(r.status, Status::Error);
    assert!(r.error_message.unwrap().contains("recursion"));
}

#[test]
fn runaway_output_is_capped() {
    let r = exec("@( 1 ) வரை\n பதிப்பி \"aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa\"\nமுடி");
    assert_eq!(r.status, Status::Error);
    assert!(r.output.len() <= ezhil_playground::MAX_OUTPUT_BYTES);
}

#[test]
fn svg_only_when_turtle_used() {
    assert!(exec("பதிப்பி 1").svg.is_none());
    assert!(exec("வலது(90)").svg.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn status_and_message_agree(program in "(\\PC|\n){0,60}", inputs in prop::collection::vec(".{0,5}", 0..3)) {
        let r = execute_sandboxed(&ExecRequest::new(program).with_input(inputs));
        match r.status {
            Status::Success => prop_assert!(r.error_message.is_none()),
            Status::Error => prop_assert!(r.error_message.is_some()),
        }
        let json = serde_json::to_string(&r).unwrap();
        let back: ExecResult = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn generated_programs_never_escape(stmts in prop::collection::vec(prop::sample::select(vec![
        "x = 1", "x = x + 1", "பதிப்பி x", "@( x < 3 ) வரை", "முடி", "நிறுத்து", "exit(2)",
        "y = [x, \"a\"]", "z = y + y", "பின்கொடு", "நிரல்பாகம் f(a)", "f(x)", "x = 1/0",
    ]), 0..15)) {
        let r = exec(&stmts.join("\n"));
        prop_assert_eq!(r.status == Status::Error, r.error_message.is_some());
    }
}
