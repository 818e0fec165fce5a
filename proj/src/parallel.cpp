#include "swflow/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace swflow {

namespace {

int g_threads = 0; // 0 = not resolved yet

int resolve_default() {
    if (const char* env = std::getenv("SWFLOW_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Persistent pool; workers sleep between jobs. One job = one parallel_for call.
class Pool {
public:
    explicit Pool(int workers) : stop_(false), job_id_(0), pending_(0) {
        for (int i = 0; i < workers; ++i)
            threads_.emplace_back([this, i] { worker(i + 1); });
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(m_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
        const int nt = static_cast<int>(threads_.size()) + 1;
        cur_fn_ = &fn;
        cur_n_ = n;
        cur_nt_ = nt;
        {
            std::lock_guard<std::mutex> lk(m_);
            pending_ = static_cast<int>(threads_.size());
            ++job_id_;
        }
        cv_.notify_all();
        run_slice(0);
        std::unique_lock<std::mutex> lk(m_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        cur_fn_ = nullptr;
    }

private:
    void run_slice(int idx) {
        const std::size_t chunk = (cur_n_ + cur_nt_ - 1) / cur_nt_;
        const std::size_t b = std::min(cur_n_, chunk * static_cast<std::size_t>(idx));
        const std::size_t e = std::min(cur_n_, b + chunk);
        if (b < e) (*cur_fn_)(b, e);
    }

    void worker(int idx) {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lk(m_);
                cv_.wait(lk, [&] { return stop_ || job_id_ != seen; });
                if (stop_) return;
                seen = job_id_;
            }
            run_slice(idx);
            {
                std::lock_guard<std::mutex> lk(m_);
                if (--pending_ == 0) done_cv_.notify_one();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex m_;
    std::condition_variable cv_, done_cv_;
    bool stop_;
    std::uint64_t job_id_;
    int pending_;
    const std::function<void(std::size_t, std::size_t)>* cur_fn_ = nullptr;
    std::size_t cur_n_ = 0;
    int cur_nt_ = 1;
};

Pool* g_pool = nullptr;
int g_pool_threads = -1;

void ensure_pool() {
    if (g_threads == 0) g_threads = resolve_default();
    if (g_pool_threads != g_threads) {
        delete g_pool;
        g_pool = g_threads > 1 ? new Pool(g_threads - 1) : nullptr;
        g_pool_threads = g_threads;
    }
}

} // namespace

int thread_count() {
    if (g_threads == 0) g_threads = resolve_default();
    return g_threads;
}

void set_threads(int n) {
    g_threads = n < 1 ? 1 : n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    ensure_pool();
    if (!g_pool || n < 4096) {
        if (n > 0) fn(0, n);
        return;
    }
    g_pool->run(n, fn);
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

} // namespace swflow
