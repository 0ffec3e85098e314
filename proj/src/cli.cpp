#include "thetainv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "thetainv/census.hpp"
#include "thetainv/f2series.hpp"
#include "thetainv/quadarith.hpp"
#include "thetainv/theorems.hpp"

namespace thetainv::cli {

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    std::int64_t parse()
    {
        const std::int64_t v = sum();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    [[noreturn]] void fail() const { throw std::invalid_argument("malformed integer expression '" + s_ + "'"); }

    bool eat(char c)
    {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::int64_t checked(__int128 v) const
    {
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) fail();
        return static_cast<std::int64_t>(v);
    }

    std::int64_t sum()
    {
        std::int64_t v = eat('-') ? checked(-static_cast<__int128>(product())) : product();
        for (;;) {
            if (eat('+'))
                v = checked(static_cast<__int128>(v) + product());
            else if (eat('-'))
                v = checked(static_cast<__int128>(v) - product());
            else
                return v;
        }
    }

    std::int64_t product()
    {
        std::int64_t v = power();
        while (eat('*')) v = checked(static_cast<__int128>(v) * power());
        return v;
    }

    std::int64_t power()
    {
        std::int64_t base = number();
        if (!eat('^')) return base;
        const std::int64_t e = number();
        __int128 v = 1;
        for (std::int64_t i = 0; i < e; ++i) {
            v *= base;
            checked(v);
        }
        return static_cast<std::int64_t>(v);
    }

    std::int64_t number()
    {
        const std::size_t start = pos_;
        __int128 v = 0;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
            v = v * 10 + (s_[pos_++] - '0');
            checked(v);
        }
        if (pos_ == start) fail();
        return static_cast<std::int64_t>(v);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShortBitmap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t nonneg(const std::string& text, const char* what)
{
    std::int64_t v;
    try {
        v = parse_integer_expression(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
    if (v < 0) throw UsageError(std::string(what) + " must be nonnegative");
    return static_cast<std::uint64_t>(v);
}

std::int64_t any_int(const std::string& text, const char* what)
{
    try {
        return parse_integer_expression(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

BitSeries load_or_build(const std::string& path, std::uint64_t needed, BitSeries (*build)(std::size_t),
                        const char* label)
{
    if (path.empty()) return build(std::max<std::uint64_t>(needed, 1));
    BitSeries b;
    try {
        b = load_f2s(path);
    } catch (const f2s_format_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (b.length() < needed)
        throw ShortBitmap(std::string(label) + " bitmap " + path + " has " + std::to_string(b.length()) +
                          " coefficients; required length is " + std::to_string(needed));
    return b;
}

std::ostream* open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder, std::ostream& fallback)
{
    if (path.empty()) return &fallback;
    holder = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*holder) throw std::runtime_error("cannot open " + path + " for writing");
    return holder.get();
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

std::int64_t parse_integer_expression(const std::string& text) { return ExprParser(text).parse(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"GF(2) reciprocal of the squares theta series: bitmaps, statement checks, census"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "worker threads for range scans")->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "materialize a series and write it as .f2s");
    std::string gen_series, gen_limit, gen_out;
    gen->add_option("series", gen_series, "inv-theta | inv-theta7 | inv-pentagonal | theta | pentagonal")
        ->required()
        ->check(CLI::IsMember({"inv-theta", "inv-theta7", "inv-pentagonal", "theta", "pentagonal"}));
    gen->add_option("limit", gen_limit, "coefficient count, e.g. 2^23+1")->required();
    gen->add_option("-o,--out", gen_out, "output .f2s path");

    // verify
    auto* ver = app.add_subcommand("verify", "check statements over [lo, hi]");
    std::string ver_ids, ver_lo, ver_hi, ver_bitmap, ver_bitmap7, ver_out;
    ver->add_option("ids", ver_ids, "comma-separated statement ids or 'all'")->required();
    ver->add_option("lo", ver_lo)->required();
    ver->add_option("hi", ver_hi)->required();
    ver->add_option("--bitmap", ver_bitmap, "1/g bitmap (.f2s); built in memory if omitted");
    ver->add_option("--bitmap7", ver_bitmap7, "1/g^7 bitmap (.f2s); built in memory if omitted");
    ver->add_option("-o,--out", ver_out, "CSV report path (default stdout)");

    // census
    auto* cen = app.add_subcommand("census", "15 (mod 16) members of B per interval of width 16x");
    std::string cen_x, cen_intervals = "8", cen_bitmap, cen_out;
    cen->add_option("--x", cen_x)->required();
    cen->add_option("--intervals", cen_intervals);
    cen->add_option("--bitmap", cen_bitmap);
    cen->add_option("-o,--out", cen_out);

    // alpha
    auto* alp = app.add_subcommand("alpha", "beta(x) and alpha(x) for x = step, 2*step, ..., max-x");
    std::string alp_max, alp_step, alp_bitmap, alp_out;
    alp->add_option("--max-x", alp_max)->required();
    alp->add_option("--step", alp_step)->required();
    alp->add_option("--bitmap", alp_bitmap);
    alp->add_option("-o,--out", alp_out);

    // repcount
    auto* rep = app.add_subcommand("repcount", "representation count of n by a diagonal form");
    std::string rep_n, rep_form;
    bool rep_signed = false, rep_primitive = false;
    rep->add_option("--n", rep_n)->required();
    rep->add_option("--form", rep_form, "coefficients, e.g. 1,2,8")->required();
    rep->add_flag("--signed", rep_signed, "count integer solutions with signs and order");
    rep->add_flag("--primitive", rep_primitive, "only solutions with gcd 1 (requires --signed)");

    // classnum
    auto* cls = app.add_subcommand("classnum", "class number of a negative discriminant");
    std::string cls_disc;
    cls->add_option("--disc", cls_disc)->required();

    // jacobi
    auto* jac = app.add_subcommand("jacobi", "Jacobi symbol (a/n)");
    std::string jac_a, jac_n;
    jac->add_option("--a", jac_a)->required();
    jac->add_option("--n", jac_n)->required();

    for (auto* sub : {gen, ver, cen, alp, rep, cls, jac})
        sub->add_option("--threads", threads, "worker threads for range scans")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        std::unique_ptr<std::ofstream> file;

        if (*gen) {
            const std::uint64_t limit = nonneg(gen_limit, "limit");
            if (limit == 0) throw UsageError("limit must be at least 1");
            if (gen_out.empty()) throw UsageError("gen requires --out");
            BitSeries s;
            if (gen_series == "inv-theta")
                s = build_B(limit);
            else if (gen_series == "inv-theta7")
                s = inverse_seventh_power(limit);
            else if (gen_series == "inv-pentagonal")
                s = build_Bstar(limit);
            else if (gen_series == "theta")
                s = from_exponents(SparseExponents::squares(limit), limit);
            else
                s = from_exponents(SparseExponents::generalized_pentagonal(limit), limit);
            save_f2s(gen_out, s);
            out << "coefficients=" << s.length() << " set_bits=" << s.popcount() << " checksum=" << std::hex
                << s.checksum() << std::dec << '\n';
            return kOk;
        }

        if (*ver) {
            std::vector<StatementId> ids;
            if (ver_ids == "all") {
                ids = all_statements();
            } else {
                std::stringstream ss(ver_ids);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto id = parse_statement(item);
                    if (!id) throw UsageError("unknown statement id '" + item + "'");
                    ids.push_back(*id);
                }
            }
            const std::uint64_t lo = nonneg(ver_lo, "lo");
            const std::uint64_t hi = nonneg(ver_hi, "hi");
            if (lo > hi) throw UsageError("lo must not exceed hi");

            const bool need_g = std::any_of(ids.begin(), ids.end(), uses_inv_theta);
            const bool need_g7 = std::any_of(ids.begin(), ids.end(), uses_inv_theta_seventh);
            SeriesContext ctx;
            if (need_g) ctx.inv_theta = load_or_build(ver_bitmap, hi + 1, build_B, "1/g");
            if (need_g7) ctx.inv_theta_seventh = load_or_build(ver_bitmap7, hi + 1, inverse_seventh_power, "1/g^7");

            const auto reports = run_suite(ids, lo, hi, ctx, threads);
            write_reports_csv(*open_output(ver_out, file, out), reports);
            bool any = false;
            for (const auto& r : reports) {
                for (const auto& v : r.violations) {
                    any = true;
                    err << to_string(r.id) << " violated at n=" << v.n;
                    for (const auto& [k, val] : v.witness) err << ' ' << k << '=' << val;
                    err << '\n';
                }
                any = any || r.violated > 0;
            }
            return any ? kViolations : kOk;
        }

        if (*cen) {
            const std::uint64_t x = nonneg(cen_x, "x");
            const std::uint64_t intervals = nonneg(cen_intervals, "intervals");
            if (x == 0) throw UsageError("x must be positive");
            const BitSeries b = load_or_build(cen_bitmap, 16 * x * intervals, build_B, "1/g");
            write_interval_csv(*open_output(cen_out, file, out), interval_counts(b, x, intervals, threads));
            return kOk;
        }

        if (*alp) {
            const std::uint64_t max_x = nonneg(alp_max, "max-x");
            const std::uint64_t step = nonneg(alp_step, "step");
            if (step == 0) throw UsageError("step must be positive");
            const BitSeries b = load_or_build(alp_bitmap, 16 * max_x, build_B, "1/g");
            const auto sweep = alpha_sweep(b, max_x, step);
            write_sweep_csv(*open_output(alp_out, file, out), sweep);
            if (!sweep.rows.empty()) {
                const auto& lo = sweep.rows[sweep.argmin];
                const auto& hi = sweep.rows[sweep.argmax];
                err << "min alpha " << lo.alpha << " at x=" << lo.x << "; max alpha " << hi.alpha << " at x=" << hi.x
                    << '\n';
            }
            return kOk;
        }

        if (*rep) {
            const std::uint64_t n = nonneg(rep_n, "n");
            DiagonalForm f = [&] {
                try {
                    return DiagonalForm::parse(rep_form);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }();
            if (rep_primitive && !rep_signed) throw UsageError("--primitive requires --signed");
            out << (rep_signed ? count_signed_representations(n, f, rep_primitive) : count_square_tuples(n, f))
                << '\n';
            return kOk;
        }

        if (*cls) {
            out << class_number(any_int(cls_disc, "disc")) << '\n';
            return kOk;
        }

        if (*jac) {
            out << jacobi(any_int(jac_a, "a"), any_int(jac_n, "n")) << '\n';
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const ShortBitmap& e) {
        err << e.what() << '\n';
        return kShortBitmap;
    } catch (const std::out_of_range& e) {
        err << e.what() << '\n';
        return kShortBitmap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace thetainv::cli
