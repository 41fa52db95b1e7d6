//! The `ez` command: an interactive prompt, a batch runner for `.n` files,
//! and a launcher for the playground service.

use std::fmt;
use std::io::{BufRead, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use ezhil::ast::dump;
use ezhil::lexer::{self, Keyword, Token, TokenKind};
use ezhil::turtle::render_svg;
use ezhil::{parser, EntryOutcome, Error, Interpreter, Options, StreamIo};

pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const DEFAULT_PORT: u16 = 8080;

pub const PROMPT_CONTINUE: &str = "... ";

pub fn prompt(n: usize) -> String {
    format!("எழில் {n}> ")
}

pub fn usage() -> &'static str {
    "usage: ./ez [-h] [-debug] [-stdin] [files [files ...]]

positional arguments:
files

optional arguments:
-h, --help show this help message and exit
-debug enable debugging information on screen
-stdin read input from the standard input

----
extensions:
--svg-out PATH write the turtle drawing as SVG when any turtle verb ran
--serve start the playground web service on localhost
--port N port for --serve (default 8080)
"
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliConfig {
    pub files: Vec<PathBuf>,
    pub debug: bool,
    pub stdin_mode: bool,
    pub svg_out: Option<PathBuf>,
    pub serve: bool,
    pub port: Option<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Help,
    Run(CliConfig),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgError(pub String);

impl fmt::Display for ArgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ArgError {}

pub fn parse_args<I, S>(args: I) -> Result<Command, ArgError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut cfg = CliConfig::default();
    let mut args = args.into_iter().map(Into::into);
    let mut only_files = false;
    while let Some(arg) = args.next() {
        if only_files || arg == "-" || !arg.starts_with('-') {
            cfg.files.push(PathBuf::from(arg));
            continue;
        }
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) if f.starts_with("--") => (f.to_string(), Some(v.to_string())),
            _ => (arg.clone(), None),
        };
        let mut value = |name: &str| -> Result<String, ArgError> {
            match inline.clone().or_else(|| args.next()) {
                Some(v) => Ok(v),
                None => Err(ArgError(format!("argument {name}: expected a value"))),
            }
        };
        match flag.as_str() {
            "-h" | "--help" => return Ok(Command::Help),
            "-debug" | "--debug" => cfg.debug = true,
            "-stdin" | "--stdin" => cfg.stdin_mode = true,
            "--svg-out" => cfg.svg_out = Some(PathBuf::from(value("--svg-out")?)),
            "--serve" => cfg.serve = true,
            "--port" => {
                let v = value("--port")?;
                let port = v
                    .parse()
                    .map_err(|_| ArgError(format!("argument --port: invalid port '{v}'")))?;
                cfg.port = Some(port);
            }
            "--" => only_files = true,
            _ => return Err(ArgError(format!("unrecognized arguments: {arg}"))),
        }
    }
    if cfg.stdin_mode && !cfg.files.is_empty() {
        return Err(ArgError("argument -stdin: not allowed with files".into()));
    }
    if cfg.serve && (cfg.stdin_mode || !cfg.files.is_empty()) {
        return Err(ArgError(
            "argument --serve: not allowed with -stdin or files".into(),
        ));
    }
    if cfg.port.is_some() && !cfg.serve {
        return Err(ArgError("argument --port: only valid with --serve".into()));
    }
    Ok(Command::Run(cfg))
}

/// Process entry point with the three standard streams supplied by the caller.
pub fn main_with<S: Into<String>>(
    args: impl IntoIterator<Item = S>,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cfg = match parse_args(args) {
        Ok(Command::Help) => {
            let _ = stdout.write_all(usage().as_bytes());
            return 0;
        }
        Ok(Command::Run(cfg)) => cfg,
        Err(e) => {
            let _ = write!(stderr, "{}\nez: error: {e}\n", usage());
            return EXIT_USAGE;
        }
    };

    if cfg.serve {
        return serve(cfg.port.unwrap_or(DEFAULT_PORT), stderr);
    }

    let mut session = Session::new(&cfg);
    let code = if cfg.stdin_mode {
        let mut source = Vec::new();
        match stdin.read_to_end(&mut source) {
            Ok(_) => session.run_bytes(&source, "<stdin>", &mut std::io::empty(), stdout, stderr),
            Err(e) => {
                let _ = writeln!(
                    stderr,
                    "பிழை: உள்ளீட்டை படிக்க முடியவில்லை | error: cannot read standard input: {e}"
                );
                EXIT_ERROR
            }
        }
    } else if cfg.files.is_empty() {
        session.repl(stdin, stdout, stderr)
    } else {
        let mut code = 0;
        for path in &cfg.files {
            code = session.run_file(path, stdin, stdout, stderr);
            if code != 0 {
                break;
            }
        }
        code
    };

    match session.write_svg(stderr) {
        Ok(()) => code,
        Err(()) if code == 0 => EXIT_ERROR,
        Err(()) => code,
    }
}

fn serve(port: u16, stderr: &mut dyn Write) -> i32 {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start runtime: {e}");
            return EXIT_ERROR;
        }
    };
    let _ = writeln!(stderr, "எழில் playground: http://localhost:{port}/");
    match runtime.block_on(ezhil_playground::serve(addr)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(
                stderr,
                "பிழை: சேவையகம் தொடங்கவில்லை | error: cannot serve on {addr}: {e}"
            );
            EXIT_ERROR
        }
    }
}

/// State shared by all the programs of one invocation.
pub struct Session {
    debug: bool,
    svg_out: Option<PathBuf>,
    /// Canvas of the last interpreter that ran a turtle verb.
    svg: Option<String>,
}

impl Session {
    pub fn new(cfg: &CliConfig) -> Self {
        Session {
            debug: cfg.debug,
            svg_out: cfg.svg_out.clone(),
            svg: None,
        }
    }

    pub fn run_file(
        &mut self,
        path: &Path,
        stdin: &mut dyn BufRead,
        stdout: &mut dyn Write,
        stderr: &mut dyn Write,
    ) -> i32 {
        match std::fs::read(path) {
            Ok(bytes) => self.run_bytes(&bytes, &path.display().to_string(), stdin, stdout, stderr),
            Err(e) => {
                let _ = writeln!(
                    stderr,
                    "பிழை: கோப்பை படிக்க முடியவில்லை: {} | error: cannot read {}: {e}",
                    path.display(),
                    path.display()
                );
                EXIT_ERROR
            }
        }
    }

    /// Decodes, compiles and runs one program. Program input comes from `stdin`.
    pub fn run_bytes(
        &mut self,
        bytes: &[u8],
        name: &str,
        stdin: &mut dyn BufRead,
        stdout: &mut dyn Write,
        stderr: &mut dyn Write,
    ) -> i32 {
        let report = |stderr: &mut dyn Write, e: Error| {
            let sep = if e.span().is_some() { ":" } else { ": " };
            let _ = writeln!(stderr, "{name}{sep}{}", e.diagnostic());
            EXIT_ERROR
        };
        let (source, had_bom) = match lexer::strip_bom(bytes) {
            Ok(v) => v,
            Err(e) => return report(stderr, e.into()),
        };
        if had_bom {
            let _ = writeln!(
                stderr,
                "எச்சரிக்கை: {name}: BOM நீக்கப்பட்டது | warning: {name}: UTF-8 byte order mark stripped"
            );
        }
        let tokens = match lexer::tokenize(&source) {
            Ok(t) => t,
            Err(e) => return report(stderr, e.into()),
        };
        if self.debug {
            debug_tokens(&tokens, stderr);
        }
        let program = match parser::parse_program(&tokens) {
            Ok(p) => p,
            Err(e) => return report(stderr, e.into()),
        };
        if self.debug {
            let _ = stderr.write_all(dump(&program).as_bytes());
        }
        let mut interp = Interpreter::new(Options::cli());
        let result = {
            let mut io = StreamIo::new(&mut *stdin, &mut *stdout);
            interp.run(&program, &mut io)
        };
        self.keep_svg(&interp);
        match result {
            Ok(status) => status.code,
            Err(e) => report(stderr, e.into()),
        }
    }

    /// Interactive loop. Returns the process exit code.
    pub fn repl(
        &mut self,
        stdin: &mut dyn BufRead,
        stdout: &mut dyn Write,
        stderr: &mut dyn Write,
    ) -> i32 {
        let mut interp = Interpreter::new(Options::cli());
        let mut count = 1;
        let mut buffer = String::new();
        loop {
            let p = if buffer.is_empty() {
                prompt(count)
            } else {
                PROMPT_CONTINUE.to_string()
            };
            let _ = stdout.write_all(p.as_bytes());
            let _ = stdout.flush();

            let mut line = String::new();
            let eof = !matches!(stdin.read_line(&mut line), Ok(n) if n > 0);
            if eof {
                let _ = stdout.write_all(b"\n");
                if !buffer.is_empty() {
                    // An unfinished block: let the parser report it.
                    self.repl_entry(&mut interp, &buffer, stdin, stdout, stderr);
                }
                let _ = stdout.flush();
                self.keep_svg(&interp);
                return 0;
            }
            let line = line.trim_end_matches(['\n', '\r']);
            if buffer.is_empty() && line.trim().is_empty() {
                continue;
            }
            buffer.push_str(line);
            buffer.push('\n');

            match block_depth(&buffer) {
                Ok(depth) if depth > 0 => continue,
                Ok(_) => {}
                Err(e) => {
                    let _ = writeln!(stderr, "{}", e.diagnostic());
                    buffer.clear();
                    count += 1;
                    continue;
                }
            }
            let unit = std::mem::take(&mut buffer);
            count += 1;
            if let Some(code) = self.repl_entry(&mut interp, &unit, stdin, stdout, stderr) {
                let _ = stdout.flush();
                self.keep_svg(&interp);
                return code;
            }
        }
    }

    /// Runs one REPL unit. Returns `Some(code)` if the program asked to exit.
    fn repl_entry(
        &mut self,
        interp: &mut Interpreter,
        unit: &str,
        stdin: &mut dyn BufRead,
        stdout: &mut dyn Write,
        stderr: &mut dyn Write,
    ) -> Option<i32> {
        let tokens = match lexer::tokenize(unit) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(stderr, "{}", Error::from(e).diagnostic());
                return None;
            }
        };
        if self.debug {
            debug_tokens(&tokens, stderr);
        }
        let program = match parser::parse_program(&tokens) {
            Ok(p) => p,
            Err(e) => {
                let _ = writeln!(stderr, "{}", Error::from(e).diagnostic());
                return None;
            }
        };
        if self.debug {
            let _ = stderr.write_all(dump(&program).as_bytes());
        }
        let result = {
            let mut io = StreamIo::new(&mut *stdin, &mut *stdout);
            interp.run_entry(&program, &mut io)
        };
        match result {
            Ok(EntryOutcome::Continue) => None,
            Ok(EntryOutcome::Exit(code)) => Some(code),
            Err(e) => {
                let _ = stdout.flush();
                let _ = writeln!(stderr, "{}", Error::from(e).diagnostic());
                None
            }
        }
    }

    fn keep_svg(&mut self, interp: &Interpreter) {
        let world = interp.turtle();
        if world.used {
            self.svg = Some(render_svg(&world.canvas));
        }
    }

    fn write_svg(&self, stderr: &mut dyn Write) -> Result<(), ()> {
        let (Some(path), Some(svg)) = (&self.svg_out, &self.svg) else {
            return Ok(());
        };
        std::fs::write(path, svg).map_err(|e| {
            let _ = writeln!(
                stderr,
                "பிழை: SVG எழுத முடியவில்லை | error: cannot write {}: {e}",
                path.display()
            );
        })
    }
}

/// Open blocks after `text`: if/while/function openers minus ends.
pub fn block_depth(text: &str) -> Result<i32, Error> {
    let tokens = lexer::tokenize(text)?;
    Ok(tokens
        .iter()
        .map(|t| match t.kind {
            TokenKind::Keyword(Keyword::If | Keyword::While | Keyword::Function) => 1,
            TokenKind::Keyword(Keyword::End) => -1,
            _ => 0,
        })
        .sum())
}

fn debug_tokens(tokens: &[Token], out: &mut dyn Write) {
    for t in tokens {
        let _ = writeln!(out, "{} {} \"{}\"", t.span, t.kind, visible(&t.lexeme));
    }
}

/// Escapes control characters only; Tamil combining marks stay readable.
fn visible(text: &str) -> String {
    text.chars()
        .map(|c| {
            if c.is_control() {
                c.escape_default().to_string()
            } else {
                c.to_string()
            }
        })
        .collect()
}
