/* ax_layer4.c: conv 3x3, 6 -> 8 channels -- generated, do not edit. */

#include "ax_net.h"

void ax_layer4_run(const int8_t *in, int8_t *out)
{
    int16_t t[54];
    for (int32_t oy = 0; oy < 3; ++oy) {
        for (int32_t ox = 0; ox < 3; ++ox) {
            {
                int32_t kk = 0;
                for (int32_t ky = 0; ky < 3; ++ky) {
                    const int32_t iy = oy * 1 - 1 + ky;
                    for (int32_t kx = 0; kx < 3; ++kx) {
                        const int32_t ix = ox * 1 - 1 + kx;
                        for (int32_t ci = 0; ci < 6; ++ci) {
                            if (iy < 0 || iy >= 3 || ix < 0 || ix >= 3) {
                                t[kk] = 0;
                            } else {
                                t[kk] = (int16_t)((int32_t)in[(iy * 3 + ix) * 6 + ci] + (64));
                            }
                            ++kk;
                        }
                    }
                }
            }
            {
                int32_t acc = -8769;
                acc = ax_dmac(acc, 37, t[0], t[1]);
                acc = ax_dmac(acc, 57, t[2], t[3]);
                acc = ax_dmac(acc, 1900544, t[4], t[5]);
                acc = ax_dmac(acc, 4194300, t[6], t[7]);
                acc = ax_dmac(acc, 24, t[8], t[9]);
                acc = ax_dmac(acc, -4194304, t[10], t[11]);
                acc = ax_dmac(acc, 65472, t[12], t[13]);
                acc = ax_dmac(acc, 3276862, t[14], t[15]);
                acc = ax_dmac(acc, 7, t[16], t[17]);
                acc = ax_dmac(acc, 3604482, t[18], t[19]);
                acc = ax_dmac(acc, 65472, t[20], t[21]);
                acc = ax_dmac(acc, 1376256, t[22], t[23]);
                acc = ax_dmac(acc, 0, t[24], t[25]);
                acc = ax_dmac(acc, 327680, t[26], t[27]);
                acc = ax_dmac(acc, 4063179, t[28], t[29]);
                acc = ax_dmac(acc, -1179629, t[30], t[31]);
                acc = ax_dmac(acc, 17, t[32], t[33]);
                acc = ax_dmac(acc, 65507, t[34], t[35]);
                acc = ax_dmac(acc, 393210, t[36], t[37]);
                acc = ax_dmac(acc, 917501, t[38], t[39]);
                acc = ax_dmac(acc, -3342319, t[40], t[41]);
                acc = ax_dmac(acc, 1769472, t[42], t[43]);
                acc = ax_dmac(acc, 65502, t[44], t[45]);
                acc = ax_dmac(acc, -4063232, t[46], t[47]);
                acc = ax_dmac(acc, 3997753, t[48], t[49]);
                acc = ax_dmac(acc, 458805, t[50], t[51]);
                acc = ax_dmac(acc, 1310784, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 0] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 14127;
                acc = ax_dmac(acc, -3407872, t[0], t[1]);
                acc = ax_dmac(acc, -3276833, t[2], t[3]);
                acc = ax_dmac(acc, 31, t[4], t[5]);
                acc = ax_dmac(acc, 0, t[6], t[7]);
                acc = ax_dmac(acc, 524318, t[8], t[9]);
                acc = ax_dmac(acc, -3932115, t[10], t[11]);
                acc = ax_dmac(acc, 22, t[12], t[13]);
                acc = ax_dmac(acc, 13, t[14], t[15]);
                acc = ax_dmac(acc, 2949105, t[16], t[17]);
                acc = ax_dmac(acc, -2949152, t[18], t[19]);
                acc = ax_dmac(acc, 8, t[20], t[21]);
                acc = ax_dmac(acc, 4128710, t[22], t[23]);
                acc = ax_dmac(acc, 1703936, t[24], t[25]);
                acc = ax_dmac(acc, 1835008, t[26], t[27]);
                acc = ax_dmac(acc, -1507336, t[28], t[29]);
                acc = ax_dmac(acc, -2162677, t[30], t[31]);
                acc = ax_dmac(acc, -983040, t[32], t[33]);
                acc = ax_dmac(acc, 65510, t[34], t[35]);
                acc = ax_dmac(acc, 65505, t[36], t[37]);
                acc = ax_dmac(acc, 65528, t[38], t[39]);
                acc = ax_dmac(acc, 1638395, t[40], t[41]);
                acc = ax_dmac(acc, -31, t[42], t[43]);
                acc = ax_dmac(acc, 65490, t[44], t[45]);
                acc = ax_dmac(acc, 7, t[46], t[47]);
                acc = ax_dmac(acc, 65497, t[48], t[49]);
                acc = ax_dmac(acc, -1900486, t[50], t[51]);
                acc = ax_dmac(acc, 65516, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 1] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 7418;
                acc = ax_dmac(acc, 524288, t[0], t[1]);
                acc = ax_dmac(acc, 1441818, t[2], t[3]);
                acc = ax_dmac(acc, 2686926, t[4], t[5]);
                acc = ax_dmac(acc, 0, t[6], t[7]);
                acc = ax_dmac(acc, 196588, t[8], t[9]);
                acc = ax_dmac(acc, -2031601, t[10], t[11]);
                acc = ax_dmac(acc, 1114094, t[12], t[13]);
                acc = ax_dmac(acc, 589824, t[14], t[15]);
                acc = ax_dmac(acc, 3735613, t[16], t[17]);
                acc = ax_dmac(acc, -262080, t[18], t[19]);
                acc = ax_dmac(acc, 3473408, t[20], t[21]);
                acc = ax_dmac(acc, -4194304, t[22], t[23]);
                acc = ax_dmac(acc, 786380, t[24], t[25]);
                acc = ax_dmac(acc, 1310687, t[26], t[27]);
                acc = ax_dmac(acc, 1245184, t[28], t[29]);
                acc = ax_dmac(acc, -1441854, t[30], t[31]);
                acc = ax_dmac(acc, 65497, t[32], t[33]);
                acc = ax_dmac(acc, 65504, t[34], t[35]);
                acc = ax_dmac(acc, 3080192, t[36], t[37]);
                acc = ax_dmac(acc, -524247, t[38], t[39]);
                acc = ax_dmac(acc, -2293760, t[40], t[41]);
                acc = ax_dmac(acc, 3145748, t[42], t[43]);
                acc = ax_dmac(acc, 0, t[44], t[45]);
                acc = ax_dmac(acc, -2162688, t[46], t[47]);
                acc = ax_dmac(acc, 65472, t[48], t[49]);
                acc = ax_dmac(acc, 21, t[50], t[51]);
                acc = ax_dmac(acc, 65507, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 2] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 11237;
                acc = ax_dmac(acc, 655360, t[0], t[1]);
                acc = ax_dmac(acc, 1966104, t[2], t[3]);
                acc = ax_dmac(acc, 2818096, t[4], t[5]);
                acc = ax_dmac(acc, 0, t[6], t[7]);
                acc = ax_dmac(acc, -3670038, t[8], t[9]);
                acc = ax_dmac(acc, 0, t[10], t[11]);
                acc = ax_dmac(acc, 3014667, t[12], t[13]);
                acc = ax_dmac(acc, 1966070, t[14], t[15]);
                acc = ax_dmac(acc, -3342336, t[16], t[17]);
                acc = ax_dmac(acc, -4063171, t[18], t[19]);
                acc = ax_dmac(acc, 0, t[20], t[21]);
                acc = ax_dmac(acc, -2293807, t[22], t[23]);
                acc = ax_dmac(acc, -3735536, t[24], t[25]);
                acc = ax_dmac(acc, 196548, t[26], t[27]);
                acc = ax_dmac(acc, -3145701, t[28], t[29]);
                acc = ax_dmac(acc, 0, t[30], t[31]);
                acc = ax_dmac(acc, 0, t[32], t[33]);
                acc = ax_dmac(acc, 1441792, t[34], t[35]);
                acc = ax_dmac(acc, 42, t[36], t[37]);
                acc = ax_dmac(acc, -1703936, t[38], t[39]);
                acc = ax_dmac(acc, 3997700, t[40], t[41]);
                acc = ax_dmac(acc, -327616, t[42], t[43]);
                acc = ax_dmac(acc, -589824, t[44], t[45]);
                acc = ax_dmac(acc, -1900518, t[46], t[47]);
                acc = ax_dmac(acc, -1310713, t[48], t[49]);
                acc = ax_dmac(acc, 1900544, t[50], t[51]);
                acc = ax_dmac(acc, 1441736, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 3] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 13662;
                acc = ax_dmac(acc, -2949104, t[0], t[1]);
                acc = ax_dmac(acc, -2359267, t[2], t[3]);
                acc = ax_dmac(acc, 65511, t[4], t[5]);
                acc = ax_dmac(acc, -3866624, t[6], t[7]);
                acc = ax_dmac(acc, 0, t[8], t[9]);
                acc = ax_dmac(acc, -1638424, t[10], t[11]);
                acc = ax_dmac(acc, -2359299, t[12], t[13]);
                acc = ax_dmac(acc, 2883622, t[14], t[15]);
                acc = ax_dmac(acc, 0, t[16], t[17]);
                acc = ax_dmac(acc, 2752511, t[18], t[19]);
                acc = ax_dmac(acc, 65506, t[20], t[21]);
                acc = ax_dmac(acc, 1048560, t[22], t[23]);
                acc = ax_dmac(acc, 27, t[24], t[25]);
                acc = ax_dmac(acc, 65481, t[26], t[27]);
                acc = ax_dmac(acc, 36, t[28], t[29]);
                acc = ax_dmac(acc, 12, t[30], t[31]);
                acc = ax_dmac(acc, 0, t[32], t[33]);
                acc = ax_dmac(acc, 1441792, t[34], t[35]);
                acc = ax_dmac(acc, -2097152, t[36], t[37]);
                acc = ax_dmac(acc, 1900549, t[38], t[39]);
                acc = ax_dmac(acc, 49, t[40], t[41]);
                acc = ax_dmac(acc, 1572874, t[42], t[43]);
                acc = ax_dmac(acc, -4194289, t[44], t[45]);
                acc = ax_dmac(acc, 1114052, t[46], t[47]);
                acc = ax_dmac(acc, -2424848, t[48], t[49]);
                acc = ax_dmac(acc, -1245183, t[50], t[51]);
                acc = ax_dmac(acc, 65516, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 4] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 22506;
                acc = ax_dmac(acc, 0, t[0], t[1]);
                acc = ax_dmac(acc, -1507328, t[2], t[3]);
                acc = ax_dmac(acc, 327705, t[4], t[5]);
                acc = ax_dmac(acc, -3997656, t[6], t[7]);
                acc = ax_dmac(acc, -3604487, t[8], t[9]);
                acc = ax_dmac(acc, -3342336, t[10], t[11]);
                acc = ax_dmac(acc, 65487, t[12], t[13]);
                acc = ax_dmac(acc, 3080192, t[14], t[15]);
                acc = ax_dmac(acc, 3276800, t[16], t[17]);
                acc = ax_dmac(acc, -3538944, t[18], t[19]);
                acc = ax_dmac(acc, -1310720, t[20], t[21]);
                acc = ax_dmac(acc, -1114092, t[22], t[23]);
                acc = ax_dmac(acc, 0, t[24], t[25]);
                acc = ax_dmac(acc, 20, t[26], t[27]);
                acc = ax_dmac(acc, -3932137, t[28], t[29]);
                acc = ax_dmac(acc, 0, t[30], t[31]);
                acc = ax_dmac(acc, 3014679, t[32], t[33]);
                acc = ax_dmac(acc, 458790, t[34], t[35]);
                acc = ax_dmac(acc, 1769447, t[36], t[37]);
                acc = ax_dmac(acc, 65521, t[38], t[39]);
                acc = ax_dmac(acc, -2424837, t[40], t[41]);
                acc = ax_dmac(acc, -1507354, t[42], t[43]);
                acc = ax_dmac(acc, -2359302, t[44], t[45]);
                acc = ax_dmac(acc, 1966083, t[46], t[47]);
                acc = ax_dmac(acc, -3473408, t[48], t[49]);
                acc = ax_dmac(acc, -3473401, t[50], t[51]);
                acc = ax_dmac(acc, -589824, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 5] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 6409;
                acc = ax_dmac(acc, -131058, t[0], t[1]);
                acc = ax_dmac(acc, -262144, t[2], t[3]);
                acc = ax_dmac(acc, 1245184, t[4], t[5]);
                acc = ax_dmac(acc, 2359313, t[6], t[7]);
                acc = ax_dmac(acc, -4128718, t[8], t[9]);
                acc = ax_dmac(acc, -1048580, t[10], t[11]);
                acc = ax_dmac(acc, 0, t[12], t[13]);
                acc = ax_dmac(acc, 458688, t[14], t[15]);
                acc = ax_dmac(acc, 2097152, t[16], t[17]);
                acc = ax_dmac(acc, 1507276, t[18], t[19]);
                acc = ax_dmac(acc, 21, t[20], t[21]);
                acc = ax_dmac(acc, -393232, t[22], t[23]);
                acc = ax_dmac(acc, 65480, t[24], t[25]);
                acc = ax_dmac(acc, 65501, t[26], t[27]);
                acc = ax_dmac(acc, 3145676, t[28], t[29]);
                acc = ax_dmac(acc, 0, t[30], t[31]);
                acc = ax_dmac(acc, -3473353, t[32], t[33]);
                acc = ax_dmac(acc, -35, t[34], t[35]);
                acc = ax_dmac(acc, 25, t[36], t[37]);
                acc = ax_dmac(acc, 196632, t[38], t[39]);
                acc = ax_dmac(acc, 0, t[40], t[41]);
                acc = ax_dmac(acc, 196581, t[42], t[43]);
                acc = ax_dmac(acc, 33, t[44], t[45]);
                acc = ax_dmac(acc, 3473408, t[46], t[47]);
                acc = ax_dmac(acc, -982999, t[48], t[49]);
                acc = ax_dmac(acc, 53, t[50], t[51]);
                acc = ax_dmac(acc, 3801088, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 6] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 10043;
                acc = ax_dmac(acc, 3080167, t[0], t[1]);
                acc = ax_dmac(acc, -1310681, t[2], t[3]);
                acc = ax_dmac(acc, -393236, t[4], t[5]);
                acc = ax_dmac(acc, -3604480, t[6], t[7]);
                acc = ax_dmac(acc, 327673, t[8], t[9]);
                acc = ax_dmac(acc, -3407845, t[10], t[11]);
                acc = ax_dmac(acc, 42, t[12], t[13]);
                acc = ax_dmac(acc, 1310748, t[14], t[15]);
                acc = ax_dmac(acc, 0, t[16], t[17]);
                acc = ax_dmac(acc, -393216, t[18], t[19]);
                acc = ax_dmac(acc, -1900505, t[20], t[21]);
                acc = ax_dmac(acc, -1048638, t[22], t[23]);
                acc = ax_dmac(acc, 0, t[24], t[25]);
                acc = ax_dmac(acc, 28, t[26], t[27]);
                acc = ax_dmac(acc, 3538944, t[28], t[29]);
                acc = ax_dmac(acc, -2293729, t[30], t[31]);
                acc = ax_dmac(acc, 3538991, t[32], t[33]);
                acc = ax_dmac(acc, -1179648, t[34], t[35]);
                acc = ax_dmac(acc, -524288, t[36], t[37]);
                acc = ax_dmac(acc, 2031616, t[38], t[39]);
                acc = ax_dmac(acc, 65510, t[40], t[41]);
                acc = ax_dmac(acc, -2883644, t[42], t[43]);
                acc = ax_dmac(acc, -589871, t[44], t[45]);
                acc = ax_dmac(acc, -1441792, t[46], t[47]);
                acc = ax_dmac(acc, -65479, t[48], t[49]);
                acc = ax_dmac(acc, 0, t[50], t[51]);
                acc = ax_dmac(acc, 65483, t[52], t[53]);
                out[(oy * 3 + ox) * 8 + 7] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
        }
    }
}
