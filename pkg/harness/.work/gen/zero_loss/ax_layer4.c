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
                acc = ax_dmac(acc, 2424889, t[1], t[3]);
                acc = ax_dmac(acc, 1900607, t[4], t[6]);
                acc = ax_dmac(acc, -262120, t[7], t[9]);
                acc = ax_dmac(acc, -4128832, t[10], t[13]);
                acc = ax_dmac(acc, 3276862, t[14], t[15]);
                acc = ax_dmac(acc, 458807, t[17], t[18]);
                acc = ax_dmac(acc, 196544, t[19], t[21]);
                acc = ax_dmac(acc, 1376261, t[22], t[26]);
                acc = ax_dmac(acc, 4063179, t[28], t[29]);
                acc = ax_dmac(acc, -1179629, t[30], t[31]);
                acc = ax_dmac(acc, 1179619, t[33], t[35]);
                acc = ax_dmac(acc, 393210, t[36], t[37]);
                acc = ax_dmac(acc, 917501, t[38], t[39]);
                acc = ax_dmac(acc, -3342319, t[40], t[41]);
                acc = ax_dmac(acc, 1834974, t[42], t[45]);
                acc = ax_dmac(acc, -4063171, t[46], t[48]);
                acc = ax_dmac(acc, 3735559, t[49], t[50]);
                acc = ax_dmac(acc, 3473428, t[51], t[52]);
                acc = ax_mac(acc, 64, t[53]);
                out[(oy * 3 + ox) * 8 + 0] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 14127;
                acc = ax_dmac(acc, -3342387, t[0], t[2]);
                acc = ax_dmac(acc, -2162657, t[3], t[5]);
                acc = ax_dmac(acc, 524318, t[8], t[9]);
                acc = ax_dmac(acc, -3932115, t[10], t[11]);
                acc = ax_dmac(acc, 1441805, t[13], t[15]);
                acc = ax_dmac(acc, 2949105, t[16], t[17]);
                acc = ax_dmac(acc, -2949152, t[18], t[19]);
                acc = ax_dmac(acc, 524350, t[21], t[22]);
                acc = ax_dmac(acc, -3801062, t[23], t[24]);
                acc = ax_dmac(acc, 1900520, t[26], t[28]);
                acc = ax_dmac(acc, -458785, t[29], t[30]);
                acc = ax_dmac(acc, 786417, t[31], t[32]);
                acc = ax_dmac(acc, -1638431, t[35], t[37]);
                acc = ax_dmac(acc, -524264, t[39], t[40]);
                acc = ax_dmac(acc, -262145, t[41], t[42]);
                acc = ax_dmac(acc, -1966126, t[43], t[45]);
                acc = ax_dmac(acc, 524249, t[47], t[49]);
                acc = ax_dmac(acc, -1900486, t[50], t[51]);
                acc = ax_mac(acc, -20, t[53]);
                out[(oy * 3 + ox) * 8 + 1] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 7418;
                acc = ax_dmac(acc, 524310, t[0], t[2]);
                acc = ax_dmac(acc, 1703976, t[3], t[4]);
                acc = ax_dmac(acc, -3276798, t[5], t[8]);
                acc = ax_dmac(acc, -1245215, t[9], t[10]);
                acc = ax_dmac(acc, 983056, t[11], t[12]);
                acc = ax_dmac(acc, -1179639, t[13], t[14]);
                acc = ax_dmac(acc, 3735613, t[16], t[17]);
                acc = ax_dmac(acc, -262080, t[18], t[19]);
                acc = ax_dmac(acc, 3538880, t[20], t[22]);
                acc = ax_dmac(acc, 786380, t[24], t[25]);
                acc = ax_dmac(acc, 1310687, t[26], t[27]);
                acc = ax_dmac(acc, 1310697, t[28], t[30]);
                acc = ax_dmac(acc, -3997735, t[31], t[33]);
                acc = ax_dmac(acc, -2097105, t[35], t[36]);
                acc = ax_dmac(acc, -524247, t[38], t[39]);
                acc = ax_dmac(acc, -2293712, t[40], t[42]);
                acc = ax_dmac(acc, 1376223, t[43], t[46]);
                acc = ax_dmac(acc, -4194283, t[49], t[51]);
                acc = ax_mac(acc, -29, t[53]);
                out[(oy * 3 + ox) * 8 + 2] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 11237;
                acc = ax_dmac(acc, 655390, t[0], t[2]);
                acc = ax_dmac(acc, 1572907, t[3], t[4]);
                acc = ax_dmac(acc, 3211207, t[5], t[8]);
                acc = ax_dmac(acc, -1441746, t[9], t[12]);
                acc = ax_dmac(acc, 720925, t[13], t[14]);
                acc = ax_dmac(acc, -589875, t[15], t[16]);
                acc = ax_dmac(acc, -4063171, t[18], t[19]);
                acc = ax_dmac(acc, -2293807, t[22], t[23]);
                acc = ax_dmac(acc, -3735536, t[24], t[25]);
                acc = ax_dmac(acc, 196548, t[26], t[27]);
                acc = ax_dmac(acc, -3145701, t[28], t[29]);
                acc = ax_dmac(acc, 1441834, t[34], t[37]);
                acc = ax_dmac(acc, -1703875, t[38], t[40]);
                acc = ax_dmac(acc, 327675, t[41], t[42]);
                acc = ax_dmac(acc, 4259831, t[43], t[44]);
                acc = ax_dmac(acc, -1900518, t[46], t[47]);
                acc = ax_dmac(acc, -1310713, t[48], t[49]);
                acc = ax_dmac(acc, 1900565, t[50], t[52]);
                acc = ax_mac(acc, -56, t[53]);
                out[(oy * 3 + ox) * 8 + 3] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 13662;
                acc = ax_dmac(acc, -2949104, t[0], t[1]);
                acc = ax_dmac(acc, -2359267, t[2], t[3]);
                acc = ax_dmac(acc, -1572923, t[5], t[6]);
                acc = ax_dmac(acc, -1638424, t[10], t[11]);
                acc = ax_dmac(acc, -2359299, t[12], t[13]);
                acc = ax_dmac(acc, 2883622, t[14], t[15]);
                acc = ax_dmac(acc, 2752511, t[18], t[19]);
                acc = ax_dmac(acc, -1966065, t[21], t[22]);
                acc = ax_dmac(acc, -1048549, t[23], t[25]);
                acc = ax_dmac(acc, -3604444, t[27], t[29]);
                acc = ax_dmac(acc, 786454, t[31], t[34]);
                acc = ax_dmac(acc, -2097123, t[36], t[38]);
                acc = ax_dmac(acc, 327729, t[39], t[41]);
                acc = ax_dmac(acc, 1572874, t[42], t[43]);
                acc = ax_dmac(acc, -4194289, t[44], t[45]);
                acc = ax_dmac(acc, 1114052, t[46], t[47]);
                acc = ax_dmac(acc, -2424848, t[48], t[49]);
                acc = ax_dmac(acc, -1245183, t[50], t[51]);
                acc = ax_mac(acc, -20, t[53]);
                out[(oy * 3 + ox) * 8 + 4] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 22506;
                acc = ax_dmac(acc, -1507323, t[2], t[4]);
                acc = ax_dmac(acc, 1703875, t[5], t[6]);
                acc = ax_dmac(acc, 2686920, t[7], t[8]);
                acc = ax_dmac(acc, -393267, t[9], t[10]);
                acc = ax_dmac(acc, -3211217, t[13], t[14]);
                acc = ax_dmac(acc, 3342282, t[16], t[18]);
                acc = ax_dmac(acc, -1245201, t[20], t[22]);
                acc = ax_dmac(acc, 1310740, t[23], t[27]);
                acc = ax_dmac(acc, -3932137, t[28], t[29]);
                acc = ax_dmac(acc, 3014679, t[32], t[33]);
                acc = ax_dmac(acc, 458790, t[34], t[35]);
                acc = ax_dmac(acc, 1769447, t[36], t[37]);
                acc = ax_dmac(acc, -917542, t[39], t[40]);
                acc = ax_dmac(acc, -262168, t[41], t[42]);
                acc = ax_dmac(acc, -1638437, t[43], t[44]);
                acc = ax_dmac(acc, -393186, t[45], t[46]);
                acc = ax_dmac(acc, 262091, t[47], t[48]);
                acc = ax_dmac(acc, -3473401, t[50], t[51]);
                acc = ax_mac(acc, -9, t[52]);
                out[(oy * 3 + ox) * 8 + 5] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 6409;
                acc = ax_dmac(acc, -131058, t[0], t[1]);
                acc = ax_dmac(acc, -262125, t[2], t[4]);
                acc = ax_dmac(acc, 2359313, t[6], t[7]);
                acc = ax_dmac(acc, -4128718, t[8], t[9]);
                acc = ax_dmac(acc, -1048580, t[10], t[11]);
                acc = ax_dmac(acc, 458688, t[14], t[15]);
                acc = ax_dmac(acc, 2097174, t[16], t[18]);
                acc = ax_dmac(acc, -3407851, t[19], t[21]);
                acc = ax_dmac(acc, -393232, t[22], t[23]);
                acc = ax_dmac(acc, -3604515, t[25], t[27]);
                acc = ax_dmac(acc, 3145676, t[28], t[29]);
                acc = ax_dmac(acc, -3473353, t[32], t[33]);
                acc = ax_dmac(acc, -35, t[34], t[35]);
                acc = ax_dmac(acc, 1638403, t[37], t[38]);
                acc = ax_dmac(acc, 1572866, t[39], t[42]);
                acc = ax_dmac(acc, -1769439, t[43], t[45]);
                acc = ax_dmac(acc, 3538929, t[46], t[48]);
                acc = ax_dmac(acc, 2687029, t[49], t[51]);
                acc = ax_mac(acc, 58, t[52]);
                out[(oy * 3 + ox) * 8 + 6] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
            {
                int32_t acc = 10043;
                acc = ax_dmac(acc, 3080167, t[0], t[1]);
                acc = ax_dmac(acc, -1310681, t[2], t[3]);
                acc = ax_dmac(acc, -393236, t[4], t[5]);
                acc = ax_dmac(acc, -3604476, t[6], t[8]);
                acc = ax_dmac(acc, -393268, t[9], t[10]);
                acc = ax_dmac(acc, 1769514, t[11], t[13]);
                acc = ax_dmac(acc, 1310748, t[14], t[15]);
                acc = ax_dmac(acc, -327709, t[18], t[20]);
                acc = ax_dmac(acc, 2621423, t[21], t[22]);
                acc = ax_dmac(acc, -4063204, t[23], t[27]);
                acc = ax_dmac(acc, 3604445, t[28], t[30]);
                acc = ax_dmac(acc, 2031670, t[31], t[32]);
                acc = ax_dmac(acc, 3145710, t[33], t[34]);
                acc = ax_dmac(acc, -524257, t[36], t[38]);
                acc = ax_dmac(acc, -1638445, t[41], t[42]);
                acc = ax_dmac(acc, -3866634, t[43], t[44]);
                acc = ax_dmac(acc, -3014678, t[45], t[46]);
                acc = ax_dmac(acc, -65479, t[48], t[49]);
                acc = ax_mac(acc, -53, t[53]);
                out[(oy * 3 + ox) * 8 + 7] = ax_requant(acc, 1431493380, 7, -64, -64, 127);
            }
        }
    }
}
