#ifndef RACAH_CLI_HPP
#define RACAH_CLI_HPP

#include <iosfwd>
#include <string>

namespace racah {

/* Sub-commands of the command-line front end. */
enum class Command {
    verify,
    trees,
    graph,
    spectrum,
    overlap,
    krawtchouk,
    rotation,
    ninej,
};

/* Map a sub-command name to its enum value; throws ConfigError on an
 * unknown name. */
Command parse_command(const std::string& name);

/* Default pass/fail tolerance: the RACAH_TOL environment variable when set
 * (rational or decimal, must be positive), otherwise 1e-9. */
double default_tolerance();

/* One run of the front end. Numeric text fields (charges, shifts, the
 * Krawtchouk point) keep the user's spelling and are parsed exactly once,
 * inside run; "p/q" and decimal forms are both accepted. Unset integers
 * are negative. */
struct RunConfig {
    Command command = Command::verify;
    int n = -1;
    int level = -1;
    std::string a;    // comma-separated charges, empty -> default primes
    std::string beta; // comma-separated shifts, empty -> all ones
    std::string tree;
    std::string tree2;
    int sector = 0;
    std::string tol;             // empty -> default_tolerance()
    std::string format = "json"; // json | csv | dot (dot: graph only)

    // Krawtchouk evaluation point K_k(x; p, N).
    int k = 0;
    std::string x = "0";
    std::string p = "1/2";
    int big_n = 0;
};

/* Execute one command and stream the report to `out`. Returns 0 when every
 * check the command runs passes (table commands always pass), 1 when a
 * verification fails. Invalid configurations throw ConfigError/ParseError/
 * IndexError, which the binary maps to exit status 2. Identical configs
 * produce byte-identical reports. */
int run(const RunConfig& config, std::ostream& out);

} // namespace racah

#endif
