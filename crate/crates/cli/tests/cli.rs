use std::io::Write;
use std::path::PathBuf;
use std::process::{Command as Process, Stdio};

use ezhil_cli::{block_depth, main_with, parse_args, usage, CliConfig, Command, EXIT_USAGE};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ez(args: &[&str], stdin: &str) -> Run {
    let mut input = stdin.as_bytes();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(args.iter().copied(), &mut input, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn corpus_file(name: &str) -> String {
    format!("{}/../core/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ez-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn help_reproduces_usage_lines() {
    let r = ez(&["-h"], "");
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    for expected in [
        "usage: ./ez [-h] [-debug] [-stdin] [files [files ...]]",
        "positional arguments:",
        "files",
        "optional arguments:",
        "-h, --help show this help message and exit",
        "-debug enable debugging information on screen",
        "-stdin read input from the standard input",
    ] {
        assert!(lines.contains(&expected), "missing {expected:?}");
    }
    assert_eq!(ez(&["--help"], "").stdout, r.stdout);
    assert_eq!(r.stdout, usage());
}

#[test]
fn argument_parsing() {
    assert_eq!(
        parse_args(["age.n"]).unwrap(),
        Command::Run(CliConfig {
            files: vec!["age.n".into()],
            ..CliConfig::default()
        })
    );
    let Command::Run(cfg) = parse_args(["-debug", "a.n", "b.n", "--svg-out", "o.svg"]).unwrap()
    else {
        panic!()
    };
    assert!(cfg.debug);
    assert_eq!(cfg.files, [PathBuf::from("a.n"), PathBuf::from("b.n")]);
    assert_eq!(cfg.svg_out, Some("o.svg".into()));
    let Command::Run(cfg) = parse_args(["--serve", "--port=9000"]).unwrap() else {
        panic!()
    };
    assert!(cfg.serve);
    assert_eq!(cfg.port, Some(9000));
    let Command::Run(cfg) = parse_args(["--", "-x.n"]).unwrap() else {
        panic!()
    };
    assert_eq!(cfg.files, [PathBuf::from("-x.n")]);

    for bad in [
        &["-stdin", "x.n"][..],
        &["-x"],
        &["--svg-out"],
        &["--serve", "--port", "abc"],
        &["--port", "80"],
        &["--serve", "a.n"],
    ] {
        assert!(parse_args(bad.iter().copied()).is_err(), "{bad:?}");
        let r = ez(bad, "");
        assert_eq!(r.code, EXIT_USAGE, "{bad:?}");
        assert!(r.stderr.starts_with("usage: ./ez"));
        assert!(r.stdout.is_empty());
    }
}

#[test]
fn repl_golden_transcript() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let input = std::fs::read_to_string(format!("{dir}/repl_session.in")).unwrap();
    let r = ez(&[], &input);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        std::fs::read_to_string(format!("{dir}/repl_session.out")).unwrap()
    );
    assert_eq!(
        r.stderr,
        std::fs::read_to_string(format!("{dir}/repl_session.err")).unwrap()
    );
    assert!(r.stdout.starts_with("எழில் 1> 25\nஎழில் 2> "));
}

#[test]
fn repl_state_persists_and_exit_stops() {
    let r = ez(&[], "x = 5\nபதிப்பி x\nexit(4)\nபதிப்பி 99\n");
    assert_eq!(r.code, 4);
    assert_eq!(r.stdout, "எழில் 1> எழில் 2> 5\nஎழில் 3> ");
}

#[test]
fn repl_reports_unclosed_block_at_eof() {
    let r = ez(&[], "@( 1 ) வரை\n");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "எழில் 1> ... \n");
    assert!(r.stderr.contains("முடி"), "{}", r.stderr);
}

#[test]
fn repl_input_builtins_share_stdin() {
    let r = ez(&[], "x = உள்ளீடு(\"? \")\n41\nx + 1\n");
    assert_eq!(r.stdout, "எழில் 1> ? எழில் 2> 42\nஎழில் 3> \n");
}

#[test]
fn block_depth_counts_openers() {
    assert_eq!(block_depth("@( x ) ஆனால்\n").unwrap(), 1);
    assert_eq!(
        block_depth("@( x ) ஆனால்\n@( y ) இல்லைஆனால்\nஇல்லை\n").unwrap(),
        1
    );
    assert_eq!(block_depth("நிரல்பாகம் f()\n@( 1 ) வரை\nமுடி\n").unwrap(), 1);
    assert_eq!(block_depth("பதிப்பி \"முடி\"\n").unwrap(), 0);
    assert_eq!(block_depth("முடி\n").unwrap(), -1);
    assert!(block_depth("\"abc\n").is_err());
}

#[test]
fn batch_runs() {
    let r = ez(&[&corpus_file("age.n")], "x\n20\n");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("வாழ்த்துக்கள்! நிங்கள் வாக்கு அளிக்கலாம்"));
    assert!(r.stderr.is_empty());

    let r = ez(&[&corpus_file("arithmetic.n")], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("\n25 5.666666666666667 2 20 5\n"));
}

#[test]
fn batch_does_not_echo_expressions() {
    let path = temp_path("echo.n");
    std::fs::write(&path, "10 + 15\nபதிப்பி 1").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!(r.stdout, "1\n");
}

#[test]
fn exit_codes() {
    let path = temp_path("exit.n");
    std::fs::write(&path, "பதிப்பி 1\nexit(7)").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!((r.code, r.stdout.as_str()), (7, "1\n"));

    let path = temp_path("div.n");
    std::fs::write(&path, "பதிப்பி 1\nx = 1 / 0").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("div.n:2:5: பிழை:"), "{}", r.stderr);
    assert!(
        r.stderr.contains("| error: division by zero"),
        "{}",
        r.stderr
    );

    let path = temp_path("parse.n");
    std::fs::write(&path, "@( 1 ) ஆனால்\n").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());

    let r = ez(&["/definitely/missing.n"], "");
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/definitely/missing.n"));
}

#[test]
fn files_run_in_order_and_stop_on_failure() {
    let a = temp_path("a.n");
    let b = temp_path("b.n");
    let c = temp_path("c.n");
    std::fs::write(&a, "x = 1\nபதிப்பி \"a\"").unwrap();
    // Each file gets a fresh interpreter.
    std::fs::write(&b, "பதிப்பி x").unwrap();
    std::fs::write(&c, "பதிப்பி \"c\"").unwrap();
    let r = ez(
        &[
            a.to_str().unwrap(),
            b.to_str().unwrap(),
            c.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "a\n");
    assert!(r.stderr.contains("'x'"));
}

#[test]
fn bom_is_stripped_with_warning() {
    let path = temp_path("bom.n");
    std::fs::write(&path, b"\xEF\xBB\xBF\xE0\xAE\xAA\xE0\xAE\xA4\xE0\xAE\xBF\xE0\xAE\xAA\xE0\xAF\x8D\xE0\xAE\xAA\xE0\xAE\xBF 1").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "1\n");
    assert!(r.stderr.contains("warning:"));
    assert!(r.stderr.contains("byte order mark"));
}

#[test]
fn invalid_utf8_is_a_load_error() {
    let path = temp_path("bad.n");
    std::fs::write(&path, b"x = 1\n\xff\xfe").unwrap();
    let r = ez(&[path.to_str().unwrap()], "");
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("UTF-8"), "{}", r.stderr);
}

#[test]
fn debug_dumps_tokens_and_ast_to_stderr() {
    let r = ez(&["-stdin", "-debug"], "பதிப்பி 1 + 2");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "3\n");
    assert!(r.stderr.contains("1:1 KEYWORD(PRINT) \"பதிப்பி\""));
    assert!(
        r.stderr
            .contains("Program\n  Print\n    Binary +\n      Int 1\n      Int 2\n"),
        "{}",
        r.stderr
    );
}

#[test]
fn stdin_mode_matches_file_mode() {
    for name in ["arithmetic.n", "hello.n", "factorial.n", "square.n"] {
        let path = corpus_file(name);
        let source = std::fs::read_to_string(&path).unwrap();
        let from_file = ez(&[&path], "");
        let from_stdin = ez(&["-stdin"], &source);
        assert_eq!(from_file.code, from_stdin.code, "{name}");
        assert_eq!(from_file.stdout, from_stdin.stdout, "{name}");
    }
}

#[test]
fn batch_runs_are_reproducible() {
    for name in [
        "arithmetic.n",
        "age.n",
        "guess.n",
        "hello.n",
        "square.n",
        "square_loop.n",
        "factorial.n",
        "yinyang.n",
    ] {
        let input = "x\n20\n50\n25\n12\n6\n3\n2\n1\n75\n88\n94\n";
        let a = ez(&[&corpus_file(name)], input);
        let b = ez(&[&corpus_file(name)], input);
        assert_eq!(
            (a.code, &a.stdout, &a.stderr),
            (b.code, &b.stdout, &b.stderr),
            "{name}"
        );
    }
}

#[test]
fn svg_out_writes_the_canvas() {
    let out = temp_path("square.svg");
    let _ = std::fs::remove_file(&out);
    let r = ez(
        &[&corpus_file("square.n"), "--svg-out", out.to_str().unwrap()],
        "",
    );
    assert_eq!(r.code, 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("<line ").count(), 4);

    // No turtle verb, no file.
    let out2 = temp_path("none.svg");
    let _ = std::fs::remove_file(&out2);
    ez(
        &[&corpus_file("hello.n"), "--svg-out", out2.to_str().unwrap()],
        "",
    );
    assert!(!out2.exists());
}

#[test]
fn real_process_end_to_end() {
    let mut child = Process::new(env!("CARGO_BIN_EXE_ez"))
        .arg(corpus_file("age.n"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("கண்ணன்\n15\n".as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("இன்னும்  3  ஆண்டுகள்"), "{stdout}");

    let out = Process::new(env!("CARGO_BIN_EXE_ez"))
        .arg("-bogus")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn serve_flag_starts_the_playground() {
    let port = {
        let l = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        l.local_addr().unwrap().port()
    };
    let mut child = Process::new(env!("CARGO_BIN_EXE_ez"))
        .args(["--serve", "--port", &port.to_string()])
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let rt = tokio::runtime::Runtime::new().unwrap();
    let result = rt.block_on(async {
        let url = format!("http://127.0.0.1:{port}/api/execute");
        for _ in 0..100 {
            let sent = reqwest::Client::new()
                .post(&url)
                .json(&serde_json::json!({ "program": "பதிப்பி 1+1" }))
                .send()
                .await;
            if let Ok(resp) = sent {
                return Some(resp.json::<ezhil_playground::ExecResult>().await.unwrap());
            }
            tokio::time::sleep(std::time::Duration::from_millis(50)).await;
        }
        None
    });
    child.kill().ok();
    child.wait().ok();
    let r = result.expect("service did not come up");
    assert_eq!(r.output, "2\n");
}
