fn main() {
    println!("flexline");
}
