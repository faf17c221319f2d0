#pragma once

// Frozen from mpmath at 40 significant digits (chi-square, t, F) and from
// scipy.stats.studentized_range (studentized range).

namespace reference {

struct Sf {
    double x;
    double df;
    double value;
};

struct FisherSf {
    double x;
    double df1;
    double df2;
    double value;
};

struct RangeCdf {
    double q;
    int k;
    double df;
    double value;
};

struct RangeCritical {
    int k;
    double df;
    double value;
};

inline constexpr Sf kChiSquare[] = {
    {0.5, 1, 0.4795001221869535},   {1.0, 1, 0.3173105078629141},    {3.84, 1, 0.050043521248705106},
    {10.0, 1, 0.0015654022580025497}, {87.56, 1, 8.176153398915782e-21},
    {0.5, 2, 0.7788007830714049},   {1.0, 2, 0.6065306597126334},    {3.84, 2, 0.14660696213035015},
    {10.0, 2, 0.006737946999085467}, {87.56, 2, 9.69588782330005e-20},
    {0.5, 5, 0.9921232932326296},   {1.0, 5, 0.9625657732472964},    {3.84, 5, 0.5726744598320886},
    {10.0, 5, 0.07523524614651218}, {87.56, 5, 2.1860401947538578e-17},
    {0.5, 10, 0.999993388289439},   {1.0, 10, 0.9998278843700441},   {3.84, 10, 0.9542763043207358},
    {10.0, 10, 0.4404932850652124}, {87.56, 10, 1.6294827776233004e-14},
};

inline constexpr Sf kStudentT[] = {
    {0.5, 1, 0.7048327646991335},  {1.5, 1, 0.37433408362199766}, {2.5, 1, 0.2422378831816868},
    {4.0, 1, 0.15595826075473865}, {0.5, 3, 0.651447964848151},   {1.5, 3, 0.23058386524482305},
    {2.5, 3, 0.08770664700806555}, {4.0, 3, 0.028008456010146166}, {0.5, 10, 0.6278936057429729},
    {1.5, 10, 0.1645073264454402}, {2.5, 10, 0.031446844236608804}, {4.0, 10, 0.0025183326247366924},
    {0.5, 30, 0.6207230048851273}, {1.5, 30, 0.144065929128646},   {2.5, 30, 0.018115649068066696},
    {4.0, 30, 0.00038184563608375686},
};

inline constexpr FisherSf kFisherF[] = {
    {0.5, 2, 6, 0.6297376093294461},      {1.0, 2, 6, 0.421875},
    {3.0, 2, 6, 0.125},                   {5.14, 2, 6, 0.05005996590612254},
    {10.0, 2, 6, 0.012289485662266727},   {0.5, 2, 100, 0.6080388246889497},
    {1.0, 2, 100, 0.37152788212696186},   {3.0, 2, 100, 0.05428836181669084},
    {5.14, 2, 100, 0.0075017420777758175}, {10.0, 2, 100, 0.00010988481911717226},
    {0.5, 3, 50, 0.6839882676643427},     {1.0, 3, 50, 0.4006232253042852},
    {3.0, 3, 50, 0.03918806653720736},    {5.14, 3, 50, 0.0035520255444844466},
    {10.0, 3, 50, 2.852249249720165e-05}, {0.5, 1, 10, 0.49564750438311994},
    {1.0, 1, 10, 0.34089313230205986},    {3.0, 1, 10, 0.11393741215192041},
    {5.14, 1, 10, 0.04679611260006349},   {10.0, 1, 10, 0.010119559735433714},
};

inline constexpr RangeCdf kStudentizedRange[] = {
    {4.339, 3, 6, 0.9499914901743859}, {3.0, 3, 10, 0.8650165848104374}, {5.0, 4, 20, 0.9897124654059845},
    {2.5, 2, 5, 0.8626578735659658},   {3.5, 3, 60, 0.9578356027998672}, {1.0, 5, 12, 0.04908727260263612},
};

inline constexpr RangeCritical kStudentizedRangeCritical[] = {
    {3, 6, 4.3391954765202785},
    {2, 10, 3.151064183329372},
    {4, 20, 3.9582935609453846},
    {3, 60, 3.3986612406682806},
};

// Published studentized-range table, alpha = 0.05, k = 3, df = 6.
inline constexpr double kTableQ_3_6 = 4.339;

} // namespace reference
