#include "kbp/lp.hpp"

#include <stdexcept>

namespace kbp::lp {

void Problem::add_column(SparseColumn column, mpq_class c)
{
    columns.push_back(std::move(column));
    cost.push_back(std::move(c));
    lower.emplace_back(0);
    upper.emplace_back();
}

namespace {

enum class State : unsigned char { basic, at_lower, at_upper };

// Consecutive degenerate pivots before switching to Bland's rule.
constexpr int bland_after = 50;

class Simplex {
public:
    explicit Simplex(const Problem& p) : p_(p), m_(p.rows), n_(static_cast<int>(p.columns.size())) {}

    Result run()
    {
        Result res;
        const int total = n_ + m_;
        lo_.assign(total, 0);
        up_.assign(total, std::nullopt);
        val_.assign(total, 0);
        state_.assign(total, State::at_lower);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = p_.lower[j];
            up_[j] = p_.upper[j];
            if (up_[j] && *up_[j] < lo_[j]) return res;
            val_[j] = lo_[j];
        }

        std::vector<mpq_class> r(p_.rhs.begin(), p_.rhs.end());
        for (int j = 0; j < n_; ++j)
            if (lo_[j] != 0)
                for (auto [row, a] : p_.columns[j].entries) r[row] -= lo_[j] * a;

        art_sign_.assign(m_, 1);
        head_.assign(m_, 0);
        binv_.assign(m_, std::vector<mpq_class>(m_, 0));
        for (int i = 0; i < m_; ++i) {
            art_sign_[i] = r[i] < 0 ? -1 : 1;
            head_[i] = n_ + i;
            state_[n_ + i] = State::basic;
            val_[n_ + i] = abs(r[i]);
            binv_[i][i] = art_sign_[i];
        }

        cost_.assign(total, 0);
        for (int i = 0; i < m_; ++i) cost_[n_ + i] = 1;
        iterate();
        for (int i = 0; i < m_; ++i)
            if (val_[n_ + i] != 0) {
                res.iterations = iterations_;
                return res;
            }

        for (int i = 0; i < m_; ++i) up_[n_ + i] = mpq_class(0);
        for (int j = 0; j < total; ++j) cost_[j] = j < n_ ? p_.cost[j] : mpq_class(0);
        if (!iterate()) {
            res.status = Status::unbounded;
            res.iterations = iterations_;
            return res;
        }

        res.status = Status::optimal;
        res.x.assign(val_.begin(), val_.begin() + n_);
        res.objective = 0;
        for (int j = 0; j < n_; ++j)
            if (p_.cost[j] != 0 && val_[j] != 0) res.objective += p_.cost[j] * val_[j];
        res.duals = duals();
        res.iterations = iterations_;
        return res;
    }

private:
    template <class F>
    void for_column(int j, F&& f) const
    {
        if (j < n_)
            for (auto [row, a] : p_.columns[j].entries) f(row, a);
        else
            f(j - n_, static_cast<std::int64_t>(art_sign_[j - n_]));
    }

    bool fixed(int j) const { return up_[j] && *up_[j] == lo_[j]; }

    std::vector<mpq_class> duals() const
    {
        std::vector<mpq_class> y(m_, 0);
        for (int i = 0; i < m_; ++i) {
            const mpq_class& cb = cost_[head_[i]];
            if (cb == 0) continue;
            for (int k = 0; k < m_; ++k)
                if (binv_[i][k] != 0) y[k] += cb * binv_[i][k];
        }
        return y;
    }

    // Returns false when the objective is unbounded below.
    bool iterate()
    {
        const int total = n_ + m_;
        int degenerate = 0;
        std::vector<mpz_class> scaled(m_);
        std::vector<mpq_class> alpha(m_);
        for (;;) {
            const bool bland = degenerate >= bland_after;

            // Reduced costs are priced on an integer dual y*L.
            std::vector<mpq_class> y = duals();
            mpz_class L = 1;
            for (const auto& v : y) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.get_den_mpz_t());
            for (int k = 0; k < m_; ++k) scaled[k] = y[k].get_num() * (L / y[k].get_den());

            int q = -1;
            mpq_class best;
            mpz_class dot;
            for (int j = 0; j < total; ++j) {
                if (state_[j] == State::basic || fixed(j)) continue;
                dot = 0;
                for_column(j, [&](int row, std::int64_t a) {
                    if (scaled[row] != 0) dot += scaled[row] * static_cast<long>(a);
                });
                mpq_class d = cost_[j] * L - dot;
                bool improving = (state_[j] == State::at_lower && d < 0) || (state_[j] == State::at_upper && d > 0);
                if (!improving) continue;
                if (bland) {
                    q = j;
                    break;
                }
                d = abs(d);
                if (q < 0 || d > best) {
                    q = j;
                    best = d;
                }
            }
            if (q < 0) return true;

            for (auto& a : alpha) a = 0;
            for_column(q, [&](int row, std::int64_t a) {
                for (int i = 0; i < m_; ++i)
                    if (binv_[i][row] != 0) alpha[i] += binv_[i][row] * static_cast<long>(a);
            });
            const int dir = state_[q] == State::at_lower ? 1 : -1;

            int leave = -1;
            bool leave_upper = false;
            mpq_class theta;
            for (int i = 0; i < m_; ++i) {
                if (alpha[i] == 0) continue;
                const int v = head_[i];
                mpq_class limit;
                bool to_upper;
                if ((dir > 0) == (alpha[i] > 0)) {
                    limit = (val_[v] - lo_[v]) / abs(alpha[i]);
                    to_upper = false;
                } else {
                    if (!up_[v]) continue;
                    limit = (*up_[v] - val_[v]) / abs(alpha[i]);
                    to_upper = true;
                }
                if (leave < 0 || limit < theta || (limit == theta && v < head_[leave])) {
                    leave = i;
                    theta = limit;
                    leave_upper = to_upper;
                }
            }
            bool flip = false;
            if (up_[q]) {
                mpq_class range = *up_[q] - lo_[q];
                if (leave < 0 || range <= theta) {
                    flip = true;
                    theta = range;
                }
            }
            if (leave < 0 && !flip) return false;

            if (theta != 0)
                for (int i = 0; i < m_; ++i)
                    if (alpha[i] != 0) val_[head_[i]] -= dir * alpha[i] * theta;
            ++iterations_;
            degenerate = theta == 0 ? degenerate + 1 : 0;

            if (flip) {
                state_[q] = dir > 0 ? State::at_upper : State::at_lower;
                val_[q] = dir > 0 ? *up_[q] : lo_[q];
                continue;
            }

            const int v = head_[leave];
            state_[v] = leave_upper ? State::at_upper : State::at_lower;
            val_[v] = leave_upper ? *up_[v] : lo_[v];
            val_[q] += dir * theta;
            head_[leave] = q;
            state_[q] = State::basic;

            std::vector<mpq_class>& pivot_row = binv_[leave];
            const mpq_class pivot = alpha[leave];
            for (auto& e : pivot_row)
                if (e != 0) e /= pivot;
            for (int i = 0; i < m_; ++i) {
                if (i == leave || alpha[i] == 0) continue;
                const mpq_class f = alpha[i];
                for (int k = 0; k < m_; ++k)
                    if (pivot_row[k] != 0) binv_[i][k] -= f * pivot_row[k];
            }
        }
    }

    const Problem& p_;
    int m_;
    int n_;
    std::vector<mpq_class> lo_;
    std::vector<std::optional<mpq_class>> up_;
    std::vector<mpq_class> val_;
    std::vector<State> state_;
    std::vector<int> head_;
    std::vector<std::vector<mpq_class>> binv_;
    std::vector<int> art_sign_;
    std::vector<mpq_class> cost_;
    std::int64_t iterations_ = 0;
};

}  // namespace

Result solve(const Problem& problem)
{
    const std::size_t n = problem.columns.size();
    if (problem.cost.size() != n || problem.lower.size() != n || problem.upper.size() != n ||
        problem.rhs.size() != static_cast<std::size_t>(problem.rows))
        throw std::invalid_argument("lp::solve: inconsistent problem dimensions");
    return Simplex(problem).run();
}

}  // namespace kbp::lp
