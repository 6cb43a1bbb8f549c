use clap::Parser;

#[derive(Parser)]
#[command(name = "eightv-server", version, about = "Serve eightv operations over HTTP/JSON")]
struct Args {
    #[arg(long, default_value = "127.0.0.1:7878")]
    addr: String,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let args = Args::parse();
    let listener = tokio::net::TcpListener::bind(&args.addr).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    eightv_server::serve(listener).await
}
