//! Local HTTP service that runs Ezhil programs under resource limits and
//! serves a small browser playground.
//!
//! Routes: `GET /` (client page), `GET /api/keywords`, `POST /api/execute`.

use std::net::SocketAddr;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use axum::body::{to_bytes, Body};
use axum::extract::Request;
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use ezhil::turtle::render_svg;
use ezhil::{compile, BufferedIo, Interpreter, Limits, Options};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

pub const MAX_PROGRAM_BYTES: usize = 64 * 1024;
pub const MAX_INPUT_LINES: usize = 100;
/// Upper bound on a request body. JSON escaping can inflate a program up to
/// six times, so this is well above [`MAX_PROGRAM_BYTES`].
pub const MAX_BODY_BYTES: usize = 1024 * 1024;
pub const STEP_BUDGET: u64 = 5_000_000;
pub const WALL_CLOCK: Duration = Duration::from_secs(5);
pub const MAX_OUTPUT_BYTES: usize = 1024 * 1024;
pub const MAX_VALUE_LEN: usize = 1024 * 1024;

/// The keyword-helper rows shown above the editor.
const KEYWORD_HELPER: &str =
    "பதிப்பி தேர்ந்தெடு தேர்வு ஏதேனில் ஆனால் இல்லைஆனால் இல்லை ஆக வரை செய் பின்கொடு முடி நிரல்பாகம் தொடர் நிறுத்து \
     @ == - + > < >= <= != ! * / , () [] % ^";

const INDEX_HTML: &str = include_str!("../assets/index.html");

pub fn keywords() -> Vec<&'static str> {
    KEYWORD_HELPER.split_whitespace().collect()
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExecRequest {
    pub program: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_lines: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecResult {
    pub status: Status,
    pub output: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
    pub elapsed_ms: u64,
}

impl ExecRequest {
    pub fn new(program: impl Into<String>) -> Self {
        ExecRequest {
            program: program.into(),
            input_lines: None,
        }
    }

    pub fn with_input<I, S>(mut self, lines: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.input_lines = Some(lines.into_iter().map(Into::into).collect());
        self
    }

    /// Checks the size limits. The message is suitable for a 400 body.
    pub fn validate(&self) -> Result<(), String> {
        if self.program.len() > MAX_PROGRAM_BYTES {
            return Err(format!(
                "program is {} bytes; the limit is {MAX_PROGRAM_BYTES}",
                self.program.len()
            ));
        }
        let lines = self.input_lines.as_ref().map_or(0, Vec::len);
        if lines > MAX_INPUT_LINES {
            return Err(format!(
                "{lines} input lines; the limit is {MAX_INPUT_LINES}"
            ));
        }
        Ok(())
    }
}

pub fn sandbox_options() -> Options {
    Options {
        limits: Limits {
            step_budget: Some(STEP_BUDGET),
            wall_clock: Some(WALL_CLOCK),
            max_value_len: Some(MAX_VALUE_LEN),
            ..Limits::default()
        },
        allow_file_io: false,
        pinned_seed: None,
    }
}

/// Runs one request in a fresh interpreter. Never panics; every failure is
/// reported as `status: error`.
pub fn execute_sandboxed(req: &ExecRequest) -> ExecResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| run(req)));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok((output, Ok(svg))) => ExecResult {
            status: Status::Success,
            output,
            error_message: None,
            svg,
            elapsed_ms,
        },
        Ok((output, Err(message))) => ExecResult {
            status: Status::Error,
            output,
            error_message: Some(message),
            svg: None,
            elapsed_ms,
        },
        Err(_) => ExecResult {
            status: Status::Error,
            output: String::new(),
            error_message: Some("internal error while running the program".into()),
            svg: None,
            elapsed_ms,
        },
    }
}

fn run(req: &ExecRequest) -> (String, Result<Option<String>, String>) {
    if let Err(message) = req.validate() {
        return (String::new(), Err(message));
    }
    let program = match compile(&req.program) {
        Ok(p) => p,
        Err(e) => return (String::new(), Err(e.diagnostic().to_string())),
    };
    let input = req.input_lines.clone().unwrap_or_default();
    let mut io = BufferedIo::new(input).with_output_limit(MAX_OUTPUT_BYTES);
    let mut interp = Interpreter::new(sandbox_options());
    let result = interp.run(&program, &mut io);
    let mut output = io.into_output();
    match result {
        Ok(status) => {
            if status.explicit {
                if !output.is_empty() && !output.ends_with('\n') {
                    output.push('\n');
                }
                output.push_str(&format!("[exit({})]\n", status.code));
            }
            let world = interp.turtle();
            let svg = world.used.then(|| render_svg(&world.canvas));
            (output, Ok(svg))
        }
        Err(e) => (output, Err(ezhil::Error::from(e).diagnostic().to_string())),
    }
}

pub fn app() -> Router {
    Router::new()
        .route("/", get(index))
        .route("/index.html", get(index))
        .route("/api/keywords", get(keywords_handler))
        .route("/api/execute", post(execute_handler))
        .fallback(not_found)
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    serve_on(listener).await
}

pub async fn serve_on(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, app()).await
}

async fn index() -> Html<&'static str> {
    Html(INDEX_HTML)
}

fn json_response<T: Serialize>(status: StatusCode, body: &T) -> Response {
    let bytes = serde_json::to_vec(body).expect("response types always serialize");
    (
        status,
        [(header::CONTENT_TYPE, "application/json; charset=utf-8")],
        bytes,
    )
        .into_response()
}

fn bad_request(message: impl Into<String>) -> Response {
    json_response(
        StatusCode::BAD_REQUEST,
        &serde_json::json!({ "error": message.into() }),
    )
}

async fn keywords_handler() -> Response {
    json_response(StatusCode::OK, &keywords())
}

async fn not_found() -> Response {
    json_response(
        StatusCode::NOT_FOUND,
        &serde_json::json!({ "error": "not found" }),
    )
}

async fn execute_handler(request: Request<Body>) -> Response {
    let bytes = match to_bytes(request.into_body(), MAX_BODY_BYTES).await {
        Ok(b) => b,
        Err(_) => {
            return bad_request(format!(
                "request body is unreadable or larger than {MAX_BODY_BYTES} bytes"
            ))
        }
    };
    let req: ExecRequest = match serde_json::from_slice(&bytes) {
        Ok(r) => r,
        Err(e) => return bad_request(format!("invalid request: {e}")),
    };
    if let Err(message) = req.validate() {
        return bad_request(message);
    }
    let result = match tokio::task::spawn_blocking(move || execute_sandboxed(&req)).await {
        Ok(r) => r,
        Err(_) => ExecResult {
            status: Status::Error,
            output: String::new(),
            error_message: Some("internal error while running the program".into()),
            svg: None,
            elapsed_ms: 0,
        },
    };
    json_response(StatusCode::OK, &result)
}
