use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eightv::evaluate::RotationGraph;
use eightv_api::*;
use eightv_client::{Client, ClientError};

mod render;

#[derive(Parser)]
#[command(name = "eightv", version, about = "Classify and evaluate eight-vertex Holant problems")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for brute-force evaluation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Refuse brute force above this many edges.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Send requests to a running eightv-server instead of computing locally.
    #[arg(long, global = true, value_name = "URL")]
    server: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide tractability of (a,b,c,d,w,z,y,x) and print the verdict JSON.
    Classify {
        #[arg(long)]
        sig: String,
    },
    /// Brute-force Holant value of a grid or of a 4-regular graph.
    Eval(Source),
    /// Polynomial-time value of a grid whose signatures are all affine.
    EvalAffine(Source),
    /// Number of Eulerian orientations of a 4-regular graph.
    Eo {
        #[arg(long)]
        graph: String,
    },
    /// T(G; 3, 3) of a plane graph through its medial graph.
    Tutte33 {
        #[arg(long)]
        graph: String,
    },
    /// Eight-vertex weights of the 2,4-spin Ising model.
    Ising {
        /// "Jh,Jv,J,J',J''" as multiples of πi/4, or "~"-prefixed complex floats.
        #[arg(long)]
        couplings: String,
        /// Also evaluate the Holant on this 4-regular graph.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Check a certificate against a signature.
    CheckCert {
        #[arg(long)]
        sig: String,
        /// Verdict JSON as printed by `classify`, or a bare certificate; `-` reads stdin.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Recover a grid value at λ from chain gadgets and compare with direct evaluation.
    DemoInterp {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "slot")]
        slot: String,
        /// Grid JSON; defaults to a built-in two-slot grid.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Grid JSON file, `-` for stdin.
    #[arg(long, conflicts_with = "graph")]
    grid: Option<PathBuf>,
    /// Graph text file, or one of dipole, k<N>, k4-plane.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, conflicts_with = "sig")]
    preset: Option<String>,
    #[arg(long)]
    sig: Option<String>,
}

enum Backend {
    Local,
    Remote(tokio::runtime::Runtime, Client),
}

macro_rules! call {
    ($backend:expr, $op:ident, $req:expr) => {
        match $backend {
            Backend::Local => ops::$op(&$req),
            Backend::Remote(rt, client) => rt.block_on(client.$op(&$req)).map_err(ClientError::into_api),
        }
    };
}

fn read_text(path: &std::path::Path) -> Result<String, ApiError> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| ApiError::input(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| ApiError::input(format!("{}: {e}", path.display())))
}

fn builtin_graph(name: &str) -> Option<RotationGraph> {
    match name {
        "dipole" => Some(RotationGraph::dipole()),
        "k4-plane" => Some(RotationGraph::k4_plane()),
        _ => {
            let n: usize = name.strip_prefix('k')?.parse().ok()?;
            (n >= 2).then(|| RotationGraph::k(n))
        }
    }
}

fn graph_text(arg: &str) -> Result<String, ApiError> {
    let path = std::path::Path::new(arg);
    if path.exists() || arg == "-" {
        return read_text(path);
    }
    builtin_graph(arg)
        .map(|g| g.to_string())
        .ok_or_else(|| ApiError::input(format!("{arg}: no such file or built-in graph")))
}

fn read_grid(path: &std::path::Path) -> Result<Grid, ApiError> {
    Grid::from_json(&read_text(path)?).map_err(|e| ApiError::input(format!("{}: {e}", path.display())))
}

fn eval_request(src: Source, limits: Limits) -> Result<EvalRequest, ApiError> {
    Ok(EvalRequest {
        grid: src.grid.as_deref().map(read_grid).transpose()?,
        graph: src.graph.as_deref().map(graph_text).transpose()?,
        preset: src.preset.as_deref().map(str::parse).transpose()?,
        sig: src.sig,
        limits,
    })
}

fn read_certificate(path: &std::path::Path) -> Result<Certificate, ApiError> {
    let text = read_text(path)?;
    if let Ok(v) = serde_json::from_str::<Verdict>(&text) {
        return v.certificate().cloned().ok_or_else(|| ApiError::input(format!("verdict is {}, no certificate", v.kind())));
    }
    serde_json::from_str(&text).map_err(|e| ApiError::input(format!("{}: not a verdict or certificate: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, ApiError> {
    let backend = match &cli.server {
        Some(url) => {
            let rt = tokio::runtime::Builder::new_current_thread()
                .enable_all()
                .build()
                .map_err(|e| ApiError::internal(e.to_string()))?;
            Backend::Remote(rt, Client::new(url.as_str()))
        }
        None => Backend::Local,
    };
    let limits = Limits { threads: cli.threads, max_edges: cli.max_edges };
    let json = cli.json;
    match cli.cmd {
        Cmd::Classify { sig } => {
            let v = call!(&backend, classify, ClassifyRequest { sig })?;
            render::json(&v);
        }
        Cmd::Eval(src) => render::value(&call!(&backend, eval, eval_request(src, limits)?)?, json),
        Cmd::EvalAffine(src) => render::value(&call!(&backend, eval_affine, eval_request(src, limits)?)?, json),
        Cmd::Eo { graph } => {
            render::value(&call!(&backend, eo, GraphRequest { graph: graph_text(&graph)?, limits })?, json)
        }
        Cmd::Tutte33 { graph } => {
            render::value(&call!(&backend, tutte, GraphRequest { graph: graph_text(&graph)?, limits })?, json)
        }
        Cmd::Ising { couplings, graph } => {
            let parts: Vec<String> = couplings.split(',').map(|s| s.trim().to_string()).collect();
            let couplings: [String; 5] = parts
                .try_into()
                .map_err(|_| ApiError::input("expected five comma-separated couplings Jh,Jv,J,J',J''"))?;
            let graph = graph.as_deref().map(graph_text).transpose()?;
            render::ising(&call!(&backend, ising, IsingRequest { couplings, graph, limits })?, json);
        }
        Cmd::CheckCert { sig, cert } => {
            let certificate = read_certificate(&cert)?;
            let r = call!(&backend, check_cert, CheckCertRequest { sig, certificate })?;
            render::check(&r, json);
            if !r.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::DemoInterp { lambda, t, slot, grid } => {
            let grid = grid.as_deref().map(read_grid).transpose()?;
            let req = InterpRequest { grid, slot, lambda, t, limits };
            render::interp(&call!(&backend, demo_interp, req)?, json);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind {
                ErrorKind::Input => 2,
                ErrorKind::Limit => 3,
                ErrorKind::Internal => 4,
            })
        }
    }
}
